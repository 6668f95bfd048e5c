#include "qlab/polys.hpp"

#include <cmath>

namespace qlab {

std::vector<cplx> hermite_recurrence(int n_max, cplx x, cplx a,
                                     const QParam& q) {
  if (n_max < 0) throw std::invalid_argument("hermite_recurrence: n_max < 0");
  std::vector<cplx> h(static_cast<size_t>(n_max) + 1);
  h[0] = 1.0;
  if (n_max == 0) return h;
  h[1] = 2.0 * x - a;
  double qn = q.q;  // q^n starting the n = 1 step
  for (int n = 1; n < n_max; ++n) {
    h[n + 1] = (2.0 * x - a * qn) * h[n] - (1.0 - qn) * h[n - 1];
    qn *= q.q;
  }
  return h;
}

std::vector<cplx> hermite_recurrence(int n_max, const EvalPointZT& point,
                                     cplx a, const QParam& q) {
  return hermite_recurrence(n_max, point.x(), a, q);
}

cplx hermite_3phi2(const BigQHermiteSpec& spec, const EvalPointZT& point,
                   const SeriesControl& ctl) {
  if (spec.n < 0) throw std::invalid_argument("hermite_3phi2: n >= 0");
  if (spec.a == cplx(0.0))
    throw std::invalid_argument(
        "hermite_3phi2: a = 0 not representable (a^{-n} prefactor); "
        "use qhermite");
  const QParam& q = spec.q;
  HyperSeriesSpec h;
  h.upper = {cplx(q.pow(-spec.n)), spec.a * point.z, spec.a / point.z};
  h.lower = {cplx(0.0), cplx(0.0)};
  h.argument = q.q;
  return std::pow(spec.a, -static_cast<double>(spec.n)) * qhyper(h, q, ctl);
}

cplx hermite_2phi0(const BigQHermiteSpec& spec, const EvalPointZT& point,
                   const SeriesControl& ctl) {
  if (spec.n < 0) throw std::invalid_argument("hermite_2phi0: n >= 0");
  const QParam& q = spec.q;
  HyperSeriesSpec h;
  h.upper = {cplx(q.pow(-spec.n)), spec.a * point.z};
  h.lower = {};
  h.argument = q.pow(spec.n) / (point.z * point.z);
  return std::pow(point.z, spec.n) * qhyper(h, q, ctl);
}

cplx qhermite(int n, const EvalPointZT& point, const QParam& q,
              const SeriesControl& ctl) {
  return hermite_2phi0({n, cplx(0.0), q}, point, ctl);
}

double shift_identity_residual(int n, const EvalPointZT& point, cplx a,
                               const QParam& q) {
  if (n < 1) throw std::invalid_argument("shift_identity_residual: n >= 1");
  const cplx x = point.x();
  const cplx lhs = hermite_recurrence(n, x, a, q)[n];
  const auto shifted = hermite_recurrence(n, x, a * q.q, q);
  const cplx rhs =
      shifted[n] - a * (1.0 - q.pow(n)) * shifted[n - 1];
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

double orthogonality_weight(double theta, cplx a, const QParam& q,
                            const SeriesControl& ctl) {
  if (!(theta > 0.0) || !(theta < std::acos(-1.0)))
    throw std::invalid_argument("orthogonality_weight: theta in (0, pi)");
  const cplx eitheta = std::polar(1.0, theta);
  const cplx num = qpoch_infinite(eitheta * eitheta, q, ctl);
  const cplx den = qpoch_infinite(a * eitheta, q, ctl);
  if (den == cplx(0.0))
    throw pole_error("orthogonality_weight: (a e^{i theta}; q)_inf vanished");
  return std::norm(num / den);
}

std::vector<double> classical_limit_residual_poly(
    int n, double x, double a, std::span<const double> q_list) {
  std::vector<double> res;
  res.reserve(q_list.size());
  const cplx target = std::pow(cplx(2.0 * x - a), n);
  for (double qv : q_list) {
    const QParam q(qv);
    const cplx h = hermite_recurrence(n, cplx(x), cplx(a), q)[n];
    res.push_back(std::abs(h - target));
  }
  return res;
}

}  // namespace qlab
