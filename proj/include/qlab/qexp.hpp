#pragma once

#include <span>
#include <vector>

#include "qlab/types.hpp"

namespace qlab {

/// Parameters of the q-exponential E_q(x; a, b). b_max is the convergence
/// guard: evaluation refuses |b| or |a b| beyond it instead of attempting a
/// series whose terms grow like O(|a b|^n).
struct QExpParams {
  cplx a;
  cplx b;
  double b_max = 2.0;
};

/// E_q(x; a, b) = sum_n q^{n^2/4}/(q;q)_n
///                (a q^{(1-n)/2} z; q)_n (a q^{(1-n)/2} / z; q)_n b^n,
/// with z = e^{i theta}, x = cos theta. Each term is a polynomial in z and
/// 1/z, so the series extends off the unit circle as written; the shifted
/// arguments q^{+-1/2} z of the eigenrelation are evaluated that way.
cplx qexp_z(cplx z, cplx a, cplx b, const QParam& q,
            const SeriesControl& ctl = {}, double b_max = 2.0);

cplx qexp(const EvalPointZT& point, const QExpParams& params, const QParam& q,
          const SeriesControl& ctl = {});

/// The x-independent case E_q(-; 0, b): all Pochhammer factors collapse to 1.
cplx qexp_a0(cplx b, const QParam& q, const SeriesControl& ctl = {});

/// g_n(b) = E_q(-; 0, b q^{n/2}) = sum_k q^{k(k+2n)/4}/(q;q)_k b^k.
/// Any integer n is accepted; the q^{k^2/4} factor dominates eventually.
cplx g_series(int n, cplx b, const QParam& q, const SeriesControl& ctl = {});

/// Normalized residual of g_{n+1}(b) = g_{n-1}(b) - b q^{(2n-1)/4} g_n(b),
/// n >= 1, each g evaluated independently.
double g_recurrence_residual(int n, cplx b, const QParam& q,
                             const SeriesControl& ctl = {});

/// sup over the theta grid of the eigenrelation residual
///   |tau E_q(x; a, b) - a b q^{-1/4} E_q(x; a, b)| / (1 + |E_q|),
/// tau being the divided difference operator from opalg.
double qexp_eigen_residual(const QExpParams& params, const QParam& q,
                           std::span<const double> theta_grid,
                           const SeriesControl& ctl = {});

/// Residuals |E_q(x; -i, (1-q) b / 2) - e^{i b x}| per q in q_list.
std::vector<double> classical_limit_residual_qexp(
    double x, double b, std::span<const double> q_list,
    const SeriesControl& ctl = {});

/// General-parameter form: |E_q(x; a, (1-q) b) - exp[(1 + a^2 - 2 a x) b]|.
std::vector<double> classical_limit_residual_qexp_general(
    double x, double a, double b, std::span<const double> q_list,
    const SeriesControl& ctl = {});

}  // namespace qlab
