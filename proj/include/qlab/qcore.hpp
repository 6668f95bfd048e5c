#pragma once

#include <vector>

#include "qlab/types.hpp"

namespace qlab {

/// Parameters of a basic hypergeometric series
///   sum_n  (a_1..a_r; q)_n / [(q, b_1..b_s; q)_n] *
///          [(-1)^n q^{n(n-1)/2}]^{1+s-r} * z^n.
/// No lower parameter may equal q^{-k} for integer k >= 0 (that would zero a
/// denominator factor).
struct HyperSeriesSpec {
  std::vector<cplx> upper;
  std::vector<cplx> lower;
  cplx argument;
};

/// Optional evaluation statistics, mainly for tests.
struct SeriesStats {
  int terms_used = 0;
  bool terminated = false;  ///< an upper parameter q^{-n} cut the sum
};

/// Finite product (a; q)_k = prod_{j<k} (1 - a q^j). Returns 1 for k = 0.
cplx qpoch_finite(cplx a, const QParam& q, int k);

/// Infinite product (a; q)_inf, truncated at the first K with
/// |a| q^K < ctl.abs_floor and K >= ctl.consecutive_small.
/// Ascending-k multiplication order; throws truncation_error past max_terms.
cplx qpoch_infinite(cplx a, const QParam& q, const SeriesControl& ctl = {});

/// General exponent (a; q)_alpha = (a; q)_inf / (a q^alpha; q)_inf.
/// Throws pole_error when the denominator product vanishes.
cplx qpoch_general(cplx a, const QParam& q, double alpha,
                   const SeriesControl& ctl = {});

/// Basic hypergeometric series r_phi_s.
///
/// When an upper parameter equals q^{-n} (within relative distance 1e-12)
/// the series terminates and exactly n+1 terms are summed. Otherwise
/// summation stops after ctl.consecutive_small successive terms with
/// |term| < rel_tol*|partial| + abs_floor. Forward summation order; each
/// term is built from the previous one by a single multiplicative update,
/// so identical inputs give bitwise-identical results.
cplx qhyper(const HyperSeriesSpec& spec, const QParam& q,
            const SeriesControl& ctl = {}, SeriesStats* stats = nullptr);

}  // namespace qlab
