#include "qlab/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlab/polys.hpp"
#include "qlab/qcore.hpp"

namespace qlab {

namespace {

constexpr double kThetaClamp = 1e-8;

double expected_entry(int m, int n, const QParam& q,
                      const SeriesControl& ctl) {
  if (m != n) return 0.0;
  const cplx p = qpoch_infinite(q.pow(n + 1), q, ctl);
  return 1.0 / p.real();
}

}  // namespace

ChebyshevRule chebyshev_rule(int N) {
  if (N < 1) throw std::invalid_argument("chebyshev_rule: N >= 1");
  ChebyshevRule rule;
  rule.N = N;
  rule.weight = std::numbers::pi / N;
  rule.nodes.resize(N);
  for (int k = 1; k <= N; ++k)
    rule.nodes[k - 1] = std::cos((2 * k - 1) * std::numbers::pi / (2 * N));
  return rule;
}

OrthogonalityReport orthogonality_entry(int m, int n, double a,
                                        const QParam& q,
                                        const ChebyshevRule& rule,
                                        const SeriesControl& ctl) {
  if (!(std::abs(a) < 1.0))
    throw std::domain_error("orthogonality_entry: need real |a| < 1");
  const int n_max = std::max(m, n);
  double sum = 0.0;
  for (double x : rule.nodes) {
    const double theta =
        std::clamp(std::acos(x), kThetaClamp, std::numbers::pi - kThetaClamp);
    const double w = orthogonality_weight(theta, a, q, ctl);
    const auto h = hermite_recurrence(n_max, cplx(x), cplx(a), q);
    sum += w * h[m].real() * h[n].real();
  }
  const double computed = sum / (2.0 * rule.N);
  const double expected = expected_entry(m, n, q, ctl);
  return {m, n, computed, expected, std::abs(computed - expected)};
}

std::vector<std::vector<OrthogonalityReport>> gram_matrix(
    int n_max, double a, const QParam& q, const ChebyshevRule& rule,
    const SeriesControl& ctl) {
  if (!(std::abs(a) < 1.0))
    throw std::domain_error("gram_matrix: need real |a| < 1");
  const size_t dim = static_cast<size_t>(n_max) + 1;
  std::vector<std::vector<double>> acc(dim, std::vector<double>(dim, 0.0));

  for (double x : rule.nodes) {
    const double theta =
        std::clamp(std::acos(x), kThetaClamp, std::numbers::pi - kThetaClamp);
    const double w = orthogonality_weight(theta, a, q, ctl);
    const auto h = hermite_recurrence(n_max, cplx(x), cplx(a), q);
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < dim; ++j)
        acc[i][j] += w * h[i].real() * h[j].real();
  }

  std::vector<std::vector<OrthogonalityReport>> out(dim);
  for (size_t i = 0; i < dim; ++i) {
    out[i].reserve(dim);
    for (size_t j = 0; j < dim; ++j) {
      const double computed = acc[i][j] / (2.0 * rule.N);
      const double expected =
          expected_entry(static_cast<int>(i), static_cast<int>(j), q, ctl);
      out[i].push_back({static_cast<int>(i), static_cast<int>(j), computed,
                        expected, std::abs(computed - expected)});
    }
  }
  return out;
}

}  // namespace qlab
