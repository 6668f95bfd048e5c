#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qlab/expansion.hpp"
#include "qlab/qexp.hpp"

using namespace qlab;

namespace {

// (-b^2/4; q^2)_inf by direct multiplication.
cplx u0_oracle(cplx b, double qv, double cutoff = 1e-18) {
  const double q2 = qv * qv;
  cplx p = 1.0;
  double qk = 1.0;
  while (qk >= cutoff) {
    p *= (1.0 + b * b / 4.0 * qk);
    qk *= q2;
  }
  return 1.0 / p;
}

}  // namespace

TEST_CASE("u_0 against the direct product, u_n against its one-step ratio") {
  const QParam q(0.5);
  CHECK(u0_coeff(cplx(0.0), q) == cplx(1.0));
  CHECK(u_coeff(0, cplx(0.0), q) == cplx(1.0));

  const cplx u0 = u0_coeff(cplx(0.4), q);
  CHECK(std::abs(u0 - u0_oracle(cplx(0.4), 0.5)) <= 1e-13);

  // u_1 = u_0 q^{1/4}/(1-q) (i b/2)
  const cplx u1 = u_coeff(1, cplx(0.4), q);
  const cplx want1 = u0 * q.quarter_root / (1.0 - q.q) * cplx(0.0, 0.2);
  CHECK(std::abs(u1 - want1) <= 1e-14);

  // ratio u_2/u_1 = q^{3/4} (i b/2) / (1 - q^2)
  const cplx u2 = u_coeff(2, cplx(0.4), q);
  const cplx ratio = u2 / u1;
  const cplx want = q.pow(0.75) * cplx(0.0, 0.2) / (1.0 - q.q * q.q);
  CHECK(std::abs(ratio - want) <= 1e-12 * std::abs(want));
}

TEST_CASE("u_0 pole: the product vanishes at -b^2/4 = q^{-2k}") {
  const QParam q(0.5);
  // b = 2i makes -b^2/4 = 1, so the k = 0 factor vanishes
  CHECK_THROWS_AS(u0_coeff(cplx(0.0, 2.0), q), pole_error);
}

TEST_CASE("W coefficients: b = 0 collapses to delta_{n0}") {
  const QParam q(0.5);
  CHECK(w_coeff(0, 3, cplx(0.0), q) == cplx(1.0));
  for (int n : {1, 2, 5}) CHECK(w_coeff(n, 3, cplx(0.0), q) == cplx(0.0));
}

TEST_CASE("W separates as u_n times the y series") {
  for (double qv : {0.5, 0.8}) {
    const QParam q(qv);
    for (cplx b : {cplx(0.2), cplx(0.0, 0.4)})
      for (int n = 0; n <= 10; ++n)
        for (int m = -5; m <= 5; ++m) {
          const auto t = expansion_terms(n, m, b, q);
          CHECK(std::abs(t.w - t.u_n * t.y_mn) <=
                1e-13 * (1.0 + std::abs(t.w)));
          // y is the g series in disguise
          CHECK(std::abs(t.y_mn - t.g_val) <= 1e-13 * (1.0 + std::abs(t.y_mn)));
        }
  }
}

TEST_CASE("W at n = m = 0 is u_0 times the x-independent series") {
  const QParam q(0.5);
  const cplx got = w_coeff(0, 0, cplx(0.4), q);
  const cplx want = u0_oracle(cplx(0.4), 0.5) *
                    g_series(0, cplx(0.0, 0.2), q);
  CHECK(std::abs(got - want) <= 1e-13);
}

TEST_CASE("large-m limit: y -> 1 and W reaches its limiting form") {
  // y_{m+n} - 1 decays like q^{(m+n)/2}: about 1e-6 at m = 40 and below
  // 1e-12 by m = 80 (q = 0.5).
  const QParam q(0.5);
  const cplx b(0.4, 0.0);
  for (int n : {0, 1, 3}) {
    const cplx limit = u_coeff(n, b, q);  // u_0 q^{n^2/4}/(q;q)_n (ib/2)^n
    const cplx w40 = w_coeff(n, 40, b, q);
    CHECK(std::abs(w40 - limit) <= 1e-6 * (1.0 + std::abs(limit)));
    const cplx w80 = w_coeff(n, 80, b, q);
    CHECK(std::abs(w80 - limit) <= 1e-12 * (1.0 + std::abs(limit)));
  }
}

TEST_CASE("the three W recurrences hold against the closed form") {
  for (double qv : {0.5, 0.8}) {
    const QParam q(qv);
    for (cplx b : {cplx(0.2), cplx(0.0, 0.4)})
      for (int n = 0; n <= 10; ++n)
        for (int m = -5; m <= 5; ++m) {
          const auto [r1, r2, r3] = w_recurrence_residuals(n, m, b, q);
          CHECK(r1 <= 1e-11);
          CHECK(r2 <= 1e-11);
          CHECK(r3 <= 1e-11);
        }
  }
  const auto [z1, z2, z3] = w_recurrence_residuals(2, 1, cplx(0.0), QParam(0.5));
  CHECK(z1 == 0.0);
  CHECK(z2 == 0.0);
  CHECK(z3 == 0.0);
}

TEST_CASE("y recurrence matches the g recurrence shape") {
  for (double qv : {0.3, 0.5, 0.8}) {
    const QParam q(qv);
    for (cplx b : {cplx(0.2), cplx(0.0, 0.4), cplx(1.0)})
      for (int s = -5; s <= 10; ++s) {
        const cplx ib2 = cplx(0.0, 0.5) * b;
        const cplx y0 = y_series(s, b, q);
        const cplx y1 = y_series(s + 1, b, q);
        const cplx y2 = y_series(s + 2, b, q);
        const cplx rhs = y0 - ib2 * q.pow(0.5 * (s + 0.5)) * y1;
        CHECK(std::abs(y2 - rhs) <= 1e-12 * (1.0 + std::abs(y2)));
      }
  }
}

TEST_CASE("expansion over the big q-Hermite basis, every m") {
  for (double qv : {0.3, 0.5, 0.8}) {
    const QParam q(qv);
    for (double x : {std::cos(0.5), std::cos(1.0), std::cos(2.0)}) {
      const auto pt = EvalPointZT::from_x(x);
      for (cplx b : {cplx(0.1), cplx(0.4), cplx(0.0, 0.4)})
        for (int m : {0, 1, 2, 5})
          CHECK(expansion_residual(pt, m, b, q, 30) <= 1e-9);
    }
  }
  CHECK(expansion_residual(EvalPointZT::from_x(0.4), 2, cplx(0.0),
                           QParam(0.5), 30) == 0.0);
}

TEST_CASE("expansion over the continuous q-Hermite basis") {
  const QParam q(0.5);
  const auto pt = EvalPointZT::from_x(0.5);
  CHECK(qhermite_expansion_residual(pt, cplx(0.4), q, 30) <= 1e-9);
  CHECK(qhermite_expansion_residual(pt, cplx(0.0), q, 30) == 0.0);

  // q^{m/2} at m = 40 is far below machine noise against a = 0
  for (cplx b : {cplx(0.1), cplx(0.0, 0.4)}) {
    const double big_m = expansion_residual(pt, 40, b, q, 30);
    const double a_zero = qhermite_expansion_residual(pt, b, q, 30);
    CHECK(std::abs(big_m - a_zero) <= 1e-9);
  }
}

TEST_CASE("too small a truncation order is refused with a suggestion") {
  const QParam q(0.9);
  const auto pt = EvalPointZT::from_x(0.5);
  try {
    (void)expansion_residual(pt, 0, cplx(0.4), q, 2);
    FAIL("expected tail_error");
  } catch (const tail_error& e) {
    CHECK(e.suggested_N > 2);
    CHECK(expansion_residual(pt, 0, cplx(0.4), q, e.suggested_N) <= 1e-9);
  }
}
