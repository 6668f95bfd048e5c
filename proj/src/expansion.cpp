#include "qlab/expansion.hpp"

#include <cmath>

#include "qlab/polys.hpp"
#include "qlab/qcore.hpp"

namespace qlab {

namespace {

// Crude growth bound |H_n(x; a|q)| <= prod_{k=1}^n (3 + |a| q^{k-1}) on the
// unit circle, read off the recurrence. The q^{n^2/4} coefficient decay
// crushes it, so it only needs to be a bound.
double hermite_bound(int n, double abs_a, const QParam& q) {
  double bound = 1.0;
  double qk = 1.0;
  for (int k = 1; k <= n; ++k) {
    bound *= 3.0 + abs_a * qk;
    qk *= q.q;
  }
  return bound;
}

// Magnitude of u_0-free coefficient q^{n^2/4}/(q;q)_n |b/2|^n.
double coeff_magnitude(int n, double half_b, const QParam& q) {
  double c = 1.0;
  double qe = q.quarter_root;  // q^{(2k+1)/4} for k = 0
  double qk1 = q.q;
  for (int k = 0; k < n; ++k) {
    c *= half_b * qe / (1.0 - qk1);
    qe *= q.half_root;
    qk1 *= q.q;
  }
  return c;
}

void check_tail(int N, double half_b, double abs_a, double y_scale,
                const QParam& q, const SeriesControl& ctl) {
  auto tail_term = [&](int n) {
    return coeff_magnitude(n, half_b, q) * hermite_bound(n, abs_a, q) *
           y_scale;
  };
  if (tail_term(N + 1) < ctl.abs_floor) return;
  int suggested = std::max(N, 1);
  while (suggested < 4096 && tail_term(suggested + 1) >= ctl.abs_floor)
    suggested *= 2;
  throw tail_error("expansion truncation order N too small", suggested);
}

}  // namespace

cplx u0_coeff(cplx b, const QParam& q, const SeriesControl& ctl) {
  const QParam q2(q.q * q.q);
  const cplx prod = qpoch_infinite(-b * b / 4.0, q2, ctl);
  if (prod == cplx(0.0))
    throw pole_error("u0_coeff: (-b^2/4; q^2)_inf vanished");
  return 1.0 / prod;
}

cplx u_coeff(int n, cplx b, const QParam& q, const SeriesControl& ctl) {
  if (n < 0) throw std::invalid_argument("u_coeff: n >= 0");
  const cplx ib2 = cplx(0.0, 0.5) * b;
  cplx u = u0_coeff(b, q, ctl);
  double qe = q.quarter_root;  // q^{(2k+1)/4}
  double qk1 = q.q;            // q^{k+1}
  for (int k = 0; k < n; ++k) {
    u *= qe * ib2 / (1.0 - qk1);
    qe *= q.half_root;
    qk1 *= q.q;
  }
  return u;
}

cplx y_series(int m_plus_n, cplx b, const QParam& q, const SeriesControl& ctl) {
  const cplx ib2 = cplx(0.0, 0.5) * b;
  return qexp_a0(ib2 * q.pow(0.5 * m_plus_n), q, ctl);
}

cplx w_coeff(int n, int m, cplx b, const QParam& q, const SeriesControl& ctl) {
  return u_coeff(n, b, q, ctl) * y_series(m + n, b, q, ctl);
}

ExpansionTerms expansion_terms(int n, int m, cplx b, const QParam& q,
                               const SeriesControl& ctl) {
  ExpansionTerms t;
  t.n = n;
  t.m = m;
  t.b = b;
  t.u_n = u_coeff(n, b, q, ctl);
  t.y_mn = y_series(m + n, b, q, ctl);
  t.g_val = g_series(m + n, cplx(0.0, 0.5) * b, q, ctl);
  t.w = t.u_n * t.y_mn;
  return t;
}

std::tuple<double, double, double> w_recurrence_residuals(
    int n, int m, cplx b, const QParam& q, const SeriesControl& ctl) {
  if (n < 0) throw std::invalid_argument("w_recurrence_residuals: n >= 0");
  const cplx ib2 = cplx(0.0, 0.5) * b;

  const cplx w_n_m = w_coeff(n, m, b, q, ctl);
  const cplx w_n_m1 = w_coeff(n, m + 1, b, q, ctl);
  const cplx w_n_m2 = w_coeff(n, m + 2, b, q, ctl);
  const cplx w_n1_m = w_coeff(n + 1, m, b, q, ctl);

  const cplx lhs_ladder = ib2 / q.quarter_root * w_n_m1;
  const cplx rhs_ladder =
      q.pow(-0.5 * (n + 1)) * (1.0 - q.pow(n + 1)) * w_n1_m;
  const double r_ladder =
      std::abs(lhs_ladder - rhs_ladder) / (1.0 + std::abs(lhs_ladder));

  const cplx rhs_ml = w_n_m - (1.0 - q.pow(n + 1)) * q.pow(0.5 * m) * w_n1_m;
  const double r_mstep_ladder =
      std::abs(w_n_m2 - rhs_ml) / (1.0 + std::abs(w_n_m2));

  const cplx rhs_ms = w_n_m - ib2 * q.pow(0.5 * (n + m + 0.5)) * w_n_m1;
  const double r_mstep = std::abs(w_n_m2 - rhs_ms) / (1.0 + std::abs(w_n_m2));

  return {r_ladder, r_mstep_ladder, r_mstep};
}

double expansion_residual(const EvalPointZT& point, int m, cplx b,
                          const QParam& q, int N, const SeriesControl& ctl) {
  const double abs_a = q.pow(0.5 * m);
  const double y_tail = std::abs(y_series(m + N + 1, b, q, ctl));
  check_tail(N, 0.5 * std::abs(b), abs_a, std::max(1.0, 2.0 * y_tail), q, ctl);

  const cplx lhs = qexp(point, {cplx(0.0, -1.0), 0.5 * b}, q, ctl);
  const auto ladder = hermite_recurrence(N, point.x(), cplx(abs_a), q);
  const cplx u0 = u0_coeff(b, q, ctl);
  const cplx ib2 = cplx(0.0, 0.5) * b;

  cplx sum = 0.0;
  cplx coeff = u0;     // u_n as it evolves
  double qe = q.quarter_root;
  double qk1 = q.q;
  for (int n = 0; n <= N; ++n) {
    sum += coeff * y_series(m + n, b, q, ctl) * ladder[n];
    coeff *= qe * ib2 / (1.0 - qk1);
    qe *= q.half_root;
    qk1 *= q.q;
  }
  return std::abs(lhs - sum) / (1.0 + std::abs(lhs));
}

double qhermite_expansion_residual(const EvalPointZT& point, cplx b,
                                   const QParam& q, int N,
                                   const SeriesControl& ctl) {
  check_tail(N, 0.5 * std::abs(b), 0.0, 1.0, q, ctl);

  const cplx lhs = qexp(point, {cplx(0.0, -1.0), 0.5 * b}, q, ctl);
  const auto ladder = hermite_recurrence(N, point.x(), cplx(0.0), q);
  const cplx u0 = u0_coeff(b, q, ctl);
  const cplx ib2 = cplx(0.0, 0.5) * b;

  cplx sum = 0.0;
  cplx coeff = u0;
  double qe = q.quarter_root;
  double qk1 = q.q;
  for (int k = 0; k <= N; ++k) {
    sum += coeff * ladder[k];
    coeff *= qe * ib2 / (1.0 - qk1);
    qe *= q.half_root;
    qk1 *= q.q;
  }
  return std::abs(lhs - sum) / (1.0 + std::abs(lhs));
}

}  // namespace qlab
