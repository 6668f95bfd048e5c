#pragma once

#include <span>
#include <vector>

#include "qlab/qcore.hpp"
#include "qlab/types.hpp"

namespace qlab {

/// Degree and parameter of a continuous big q-Hermite polynomial H_n(x; a|q).
/// For quadrature use the parameter must be real with |a| < 1.
struct BigQHermiteSpec {
  int n;
  cplx a;
  QParam q;
};

/// Whole ladder H_0..H_{n_max} at x from the three-term recurrence
///   2x H_n = H_{n+1} + a q^n H_n + (1 - q^n) H_{n-1},
/// seeded with H_0 = 1, H_1 = 2x - a. Stable upward for |x| <= 1 and the
/// reference route for the series evaluations.
std::vector<cplx> hermite_recurrence(int n_max, cplx x, cplx a,
                                     const QParam& q);
std::vector<cplx> hermite_recurrence(int n_max, const EvalPointZT& point,
                                     cplx a, const QParam& q);

/// Series route a^{-n} 3phi2(q^{-n}, a z, a/z; 0, 0 | q; q) with z = e^{i
/// theta}. Requires a != 0 (callers wanting a = 0 should use qhermite).
/// The terminating sum has terms growing like q^{-n^2/2}, so this route
/// loses roughly n^2/2*log10(1/q) digits to cancellation; see README.
cplx hermite_3phi2(const BigQHermiteSpec& spec, const EvalPointZT& point,
                   const SeriesControl& ctl = {});

/// Series route e^{i n theta} 2phi0(q^{-n}, a z; - | q; q^n / z^2).
/// Valid for a = 0 as well, and numerically benign for all n.
cplx hermite_2phi0(const BigQHermiteSpec& spec, const EvalPointZT& point,
                   const SeriesControl& ctl = {});

/// Continuous q-Hermite polynomial H_n(x|q), the a -> 0 case of the 2phi0
/// route.
cplx qhermite(int n, const EvalPointZT& point, const QParam& q,
              const SeriesControl& ctl = {});

/// Normalized residual of the parameter-shift identity
///   H_n(x; a|q) = H_n(x; a q|q) - a (1 - q^n) H_{n-1}(x; a q|q),
/// both sides evaluated through the recurrence route. n >= 1.
double shift_identity_residual(int n, const EvalPointZT& point, cplx a,
                               const QParam& q);

/// Orthogonality weight w(x; a|q) = |(e^{2 i theta}; q)_inf / (a e^{i theta};
/// q)_inf|^2 for theta in (0, pi). Vanishes at the endpoints.
double orthogonality_weight(double theta, cplx a, const QParam& q,
                            const SeriesControl& ctl = {});

/// Residuals |H_n(x; a|q) - (2x - a)^n| per q in q_list, probing the
/// q -> 1^- limit. Non-increasing along an increasing q_list.
std::vector<double> classical_limit_residual_poly(int n, double x, double a,
                                                  std::span<const double> q_list);

}  // namespace qlab
