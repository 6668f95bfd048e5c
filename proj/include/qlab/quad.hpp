#pragma once

#include <vector>

#include "qlab/types.hpp"

namespace qlab {

/// Gauss-Chebyshev rule of the first kind: nodes x_k = cos((2k-1) pi / (2N)),
/// uniform weight pi/N absorbing the measure factor 1/sqrt(1-x^2). Exact for
/// polynomials of degree <= 2N-1 against that measure.
struct ChebyshevRule {
  int N;
  std::vector<double> nodes;
  double weight;
};

ChebyshevRule chebyshev_rule(int N);

/// One entry of the orthogonality check
///   (1/2pi) int_{-1}^{1} w(x; a|q)/sqrt(1-x^2) H_m H_n dx
///     = delta_{mn} / (q^{n+1}; q)_inf.
struct OrthogonalityReport {
  int m;
  int n;
  double computed;
  double expected;
  double abs_err;
};

/// Evaluate one (m, n) entry by quadrature. Requires real a with |a| < 1.
OrthogonalityReport orthogonality_entry(int m, int n, double a,
                                        const QParam& q,
                                        const ChebyshevRule& rule,
                                        const SeriesControl& ctl = {});

/// All entries m, n <= n_max, with the weight and the polynomial ladder
/// evaluated once per node. The reduction is an ordered sum over nodes, so
/// results are deterministic.
std::vector<std::vector<OrthogonalityReport>> gram_matrix(
    int n_max, double a, const QParam& q, const ChebyshevRule& rule,
    const SeriesControl& ctl = {});

}  // namespace qlab
