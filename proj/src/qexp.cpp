#include "qlab/qexp.hpp"

#include <cmath>

#include "qlab/opalg.hpp"

namespace qlab {

namespace {

// One parity chain of terms of the E_q series. The Pochhammer argument
// a q^{(1-n)/2} has exponents symmetric about zero, so stepping n -> n+2
// appends the factor pair (1 - w q^{-s})(1 - w q^{s}), s = (n+1)/2, to each
// product while the two sets of exponents (integer and half-integer spaced)
// never mix. Fusing the prefactor ratio q^{n+1} b^2 / ((1-q^{n+1})(1-q^{n+2}))
// with the factor pairs keeps every intermediate bounded.
struct TermChain {
  cplx term;
  double qs;   // q^{s} for the next update
  double qis;  // q^{-s}
  double qn1;  // q^{n+1}
  double qn2;  // q^{n+2}

  void advance(cplx w1, cplx w2, cplx b, double q) {
    const cplx f1 = 1.0 - w1 * (qs + qis) + w1 * w1;
    const cplx f2 = 1.0 - w2 * (qs + qis) + w2 * w2;
    const cplx ratio = qn1 * b * b / ((1.0 - qn1) * (1.0 - qn2));
    term *= (ratio * f1) * f2;
    qs *= q;
    qis /= q;
    qn1 *= q * q;
    qn2 *= q * q;
  }
};

}  // namespace

cplx qexp_z(cplx z, cplx a, cplx b, const QParam& q, const SeriesControl& ctl,
            double b_max) {
  if (std::abs(b) > b_max || std::abs(a * b) > b_max)
    throw std::invalid_argument(
        "qexp_z: |b| and |a b| must stay within the convergence guard");

  const cplx w1 = a * z;
  const cplx w2 = a / z;

  // Chains for even and odd n; chain state holds the full term value.
  TermChain even{1.0, q.half_root, 1.0 / q.half_root, q.q, q.q * q.q};
  TermChain odd{q.quarter_root * b / (1.0 - q.q) * (1.0 - w1) * (1.0 - w2),
                q.q, 1.0 / q.q, q.q * q.q, q.q * q.q * q.q};

  cplx sum = 0.0;
  int small_run = 0;
  for (int n = 0;; ++n) {
    TermChain& chain = (n % 2 == 0) ? even : odd;
    const cplx term = chain.term;
    sum += term;

    if (std::abs(term) < ctl.rel_tol * std::abs(sum) + ctl.abs_floor) {
      if (++small_run >= ctl.consecutive_small) return sum;
    } else {
      small_run = 0;
    }
    if (n + 1 >= ctl.max_terms || std::abs(term) > 1e100)
      throw truncation_error("qexp_z: series failed to converge", sum, n + 1);

    chain.advance(w1, w2, b, q.q);
  }
}

cplx qexp(const EvalPointZT& point, const QExpParams& params, const QParam& q,
          const SeriesControl& ctl) {
  return qexp_z(point.z, params.a, params.b, q, ctl, params.b_max);
}

cplx qexp_a0(cplx b, const QParam& q, const SeriesControl& ctl) {
  // Terms q^{n^2/4} b^n / (q;q)_n shrink eventually for every b.
  return qexp_z(1.0, 0.0, b, q, ctl, std::numeric_limits<double>::infinity());
}

cplx g_series(int n, cplx b, const QParam& q, const SeriesControl& ctl) {
  cplx sum = 0.0;
  cplx term = 1.0;
  // q^{(2k+1+2n)/4}, the exponent step between consecutive terms.
  double qe = q.pow(0.25 * (2 * n + 1));
  double qk1 = q.q;  // q^{k+1}
  int small_run = 0;
  for (int k = 0;; ++k) {
    sum += term;
    if (std::abs(term) < ctl.rel_tol * std::abs(sum) + ctl.abs_floor) {
      if (++small_run >= ctl.consecutive_small) return sum;
    } else {
      small_run = 0;
    }
    if (k + 1 >= ctl.max_terms)
      throw truncation_error("g_series: max_terms reached", sum, k + 1);
    term *= b * qe / (1.0 - qk1);
    qe *= q.half_root;
    qk1 *= q.q;
  }
}

double g_recurrence_residual(int n, cplx b, const QParam& q,
                             const SeriesControl& ctl) {
  if (n < 1) throw std::invalid_argument("g_recurrence_residual: n >= 1");
  const cplx gp = g_series(n + 1, b, q, ctl);
  const cplx gm = g_series(n - 1, b, q, ctl);
  const cplx gc = g_series(n, b, q, ctl);
  return std::abs(gp - gm + b * q.pow(0.25 * (2 * n - 1)) * gc) /
         (1.0 + std::abs(gp));
}

double qexp_eigen_residual(const QExpParams& params, const QParam& q,
                           std::span<const double> theta_grid,
                           const SeriesControl& ctl) {
  const cplx a = params.a;
  const cplx b = params.b;
  const double bmax = params.b_max;
  const FunctionHandle f{
      [a, b, q, ctl, bmax](cplx z, cplx) {
        return qexp_z(z, a, b, q, ctl, bmax);
      },
      "E_q"};
  const FunctionHandle tf = tau_apply(f, q);
  const cplx eigenvalue = a * b / q.quarter_root;

  double worst = 0.0;
  for (double theta : theta_grid) {
    const cplx z = std::polar(1.0, theta);
    const cplx ev = f(z, 1.0);
    const cplx tv = tf(z, 1.0);
    worst = std::max(worst,
                     std::abs(tv - eigenvalue * ev) / (1.0 + std::abs(ev)));
  }
  return worst;
}

std::vector<double> classical_limit_residual_qexp(
    double x, double b, std::span<const double> q_list,
    const SeriesControl& ctl) {
  std::vector<double> res;
  res.reserve(q_list.size());
  const cplx z = std::polar(1.0, std::acos(x));
  const cplx target = std::exp(cplx(0.0, b * x));
  for (double qv : q_list) {
    const QParam q(qv);
    const cplx e = qexp_z(z, cplx(0.0, -1.0), 0.5 * (1.0 - qv) * b, q, ctl);
    res.push_back(std::abs(e - target));
  }
  return res;
}

std::vector<double> classical_limit_residual_qexp_general(
    double x, double a, double b, std::span<const double> q_list,
    const SeriesControl& ctl) {
  std::vector<double> res;
  res.reserve(q_list.size());
  const cplx z = std::polar(1.0, std::acos(x));
  const cplx target = std::exp(cplx((1.0 + a * a - 2.0 * a * x) * b));
  for (double qv : q_list) {
    const QParam q(qv);
    const cplx e = qexp_z(z, cplx(a), (1.0 - qv) * b, q, ctl);
    res.push_back(std::abs(e - target));
  }
  return res;
}

}  // namespace qlab
