#pragma once

#include <tuple>

#include "qlab/qexp.hpp"
#include "qlab/types.hpp"

namespace qlab {

/// Everything that enters one expansion coefficient W_n^m(b) = u_n(b)
/// y_{m+n}(b), kept together for reporting.
struct ExpansionTerms {
  int n;
  int m;
  cplx b;
  cplx u_n;
  cplx y_mn;
  cplx g_val;
  cplx w;
};

/// The truncation order N is too small for the requested tolerance.
class tail_error : public std::runtime_error {
 public:
  tail_error(const std::string& what, int suggested)
      : std::runtime_error(what), suggested_N(suggested) {}
  int suggested_N;
};

/// u_0(b) = 1 / (-b^2/4; q^2)_inf.
cplx u0_coeff(cplx b, const QParam& q, const SeriesControl& ctl = {});

/// u_n(b) = u_0(b) q^{n^2/4} / (q;q)_n (i b / 2)^n, the solution of the
/// one-step ratio u_{n+1} = q^{(2n+1)/4} (i b / 2) u_n / (1 - q^{n+1}).
cplx u_coeff(int n, cplx b, const QParam& q, const SeriesControl& ctl = {});

/// y_{m+n}(b) = E_q(-; 0, (i b / 2) q^{(m+n)/2}).
cplx y_series(int m_plus_n, cplx b, const QParam& q,
              const SeriesControl& ctl = {});

/// W_n^m(b) = u_0(b) q^{n^2/4}/(q;q)_n E_q(-; 0, (i b/2) q^{(m+n)/2}) (i b/2)^n.
cplx w_coeff(int n, int m, cplx b, const QParam& q,
             const SeriesControl& ctl = {});

/// All ingredients of W_n^m at once.
ExpansionTerms expansion_terms(int n, int m, cplx b, const QParam& q,
                               const SeriesControl& ctl = {});

/// Normalized residuals of the three recurrences coupling the W coefficients:
///   ladder:  i (b/2) q^{-1/4} W_n^{m+1} = q^{-(n+1)/2} (1 - q^{n+1}) W_{n+1}^m
///   mstep-ladder: W_n^{m+2} = W_n^m - (1 - q^{n+1}) q^{m/2} W_{n+1}^m
///   mstep:   W_n^{m+2} = W_n^m - i (b/2) q^{(n+m+1/2)/2} W_n^{m+1}
/// all sides from the closed form.
std::tuple<double, double, double> w_recurrence_residuals(
    int n, int m, cplx b, const QParam& q, const SeriesControl& ctl = {});

/// Normalized residual of the expansion of E_q(x; -i, b/2) over the big
/// q-Hermite basis: |E_q - sum_{n<=N} W_n^m H_n(x; q^{m/2}|q)| / (1 + |E_q|).
/// Holds for every integer m. Throws tail_error when N is too small for the
/// crude tail bound to drop below ctl.abs_floor.
double expansion_residual(const EvalPointZT& point, int m, cplx b,
                          const QParam& q, int N,
                          const SeriesControl& ctl = {});

/// Same check against the continuous q-Hermite generating expansion
///   E_q(x; -i, b/2) = u_0(b) sum_k q^{k^2/4}/(q;q)_k (i b/2)^k H_k(x|q).
double qhermite_expansion_residual(const EvalPointZT& point, cplx b,
                                   const QParam& q, int N,
                                   const SeriesControl& ctl = {});

}  // namespace qlab
