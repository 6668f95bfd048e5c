#include "qlab/qcore.hpp"

#include <cmath>

namespace qlab {

namespace {

// Smallest k >= 0 with |a q^k - 1| <= tol, i.e. a = q^{-k} up to relative
// distance tol. Only k with |a| q^k >= 1/2 can qualify, which bounds the scan.
std::optional<int> match_negative_power(cplx a, const QParam& q, double tol,
                                        int k_max) {
  double qk = 1.0;
  const double abs_a = std::abs(a);
  for (int k = 0; k <= k_max && abs_a * qk >= 0.5; ++k) {
    if (std::abs(a * qk - 1.0) <= tol) return k;
    qk *= q.q;
  }
  return std::nullopt;
}

}  // namespace

cplx qpoch_finite(cplx a, const QParam& q, int k) {
  if (k < 0) throw std::invalid_argument("qpoch_finite: k must be >= 0");
  cplx p = 1.0;
  double qj = 1.0;
  for (int j = 0; j < k; ++j) {
    p *= (1.0 - a * qj);
    qj *= q.q;
  }
  return p;
}

cplx qpoch_infinite(cplx a, const QParam& q, const SeriesControl& ctl) {
  cplx p = 1.0;
  double qk = 1.0;
  const double abs_a = std::abs(a);
  for (int k = 0;; ++k) {
    if (abs_a * qk < ctl.abs_floor && k >= ctl.consecutive_small) return p;
    if (k >= ctl.max_terms)
      throw truncation_error("qpoch_infinite: max_terms reached", p, k);
    p *= (1.0 - a * qk);
    qk *= q.q;
  }
}

cplx qpoch_general(cplx a, const QParam& q, double alpha,
                   const SeriesControl& ctl) {
  const cplx num = qpoch_infinite(a, q, ctl);
  const cplx den = qpoch_infinite(a * q.pow(alpha), q, ctl);
  if (den == cplx(0.0))
    throw pole_error("qpoch_general: (a q^alpha; q)_inf vanished");
  return num / den;
}

cplx qhyper(const HyperSeriesSpec& spec, const QParam& q,
            const SeriesControl& ctl, SeriesStats* stats) {
  constexpr double kTermDetectTol = 1e-12;

  for (const cplx& b : spec.lower) {
    if (match_negative_power(b, q, kTermDetectTol, ctl.max_terms))
      throw pole_error("qhyper: lower parameter equals q^{-k}");
  }

  std::optional<int> n_term;
  for (const cplx& a : spec.upper) {
    if (auto k = match_negative_power(a, q, kTermDetectTol, ctl.max_terms)) {
      if (!n_term || *k < *n_term) n_term = k;
    }
  }

  const int balance = 1 + static_cast<int>(spec.lower.size()) -
                      static_cast<int>(spec.upper.size());
  const double q_bal = std::pow(q.q, static_cast<double>(balance));
  const double sign_bal = (balance % 2 == 0) ? 1.0 : -1.0;

  cplx sum = 0.0;
  cplx term = 1.0;
  double qn = 1.0;       // q^n
  double q_bal_n = 1.0;  // q^{balance * n}
  int small_run = 0;

  for (int n = 0;; ++n) {
    sum += term;
    if (stats) stats->terms_used = n + 1;

    if (n_term && n == *n_term) {
      if (stats) stats->terminated = true;
      return sum;
    }
    if (!n_term) {
      if (std::abs(term) < ctl.rel_tol * std::abs(sum) + ctl.abs_floor) {
        if (++small_run >= ctl.consecutive_small) return sum;
      } else {
        small_run = 0;
      }
    }
    if (n + 1 >= ctl.max_terms)
      throw truncation_error("qhyper: max_terms reached", sum, n + 1);

    // term_{n+1} = term_n * prod(1-a_i q^n) / [(1-q^{n+1}) prod(1-b_j q^n)]
    //            * [(-1) q^n]^balance * z
    cplx ratio = spec.argument;
    for (const cplx& a : spec.upper) ratio *= (1.0 - a * qn);
    for (const cplx& b : spec.lower) ratio /= (1.0 - b * qn);
    ratio /= (1.0 - q.q * qn);
    ratio *= sign_bal * q_bal_n;

    term *= ratio;
    qn *= q.q;
    q_bal_n *= q_bal;
  }
}

}  // namespace qlab
