#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>

#include "qlab/qcore.hpp"

using namespace qlab;

namespace {

// Brute-force product oracle, independent of qpoch_infinite's truncation
// logic: multiply factors until q^K < cutoff.
cplx product_oracle(cplx a, double q, double cutoff = 1e-18) {
  cplx p = 1.0;
  double qk = 1.0;
  while (qk >= cutoff) {
    p *= (1.0 - a * qk);
    qk *= q;
  }
  return p;
}

}  // namespace

TEST_CASE("QParam validates its domain and caches roots") {
  CHECK_THROWS_AS(QParam(0.0), std::invalid_argument);
  CHECK_THROWS_AS(QParam(1.0), std::invalid_argument);
  CHECK_THROWS_AS(QParam(-0.3), std::invalid_argument);
  const QParam q(0.5);
  CHECK(q.half_root == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(q.quarter_root * q.quarter_root == q.half_root);
}

TEST_CASE("EvalPointZT: construction guards and derived quantities") {
  CHECK_THROWS_AS(EvalPointZT(cplx(0.0), cplx(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(EvalPointZT(cplx(1.5), cplx(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(EvalPointZT::from_x(1.2), std::invalid_argument);

  const auto pt = EvalPointZT::unit_circle(0.7, cplx(2.0));
  CHECK(pt.x().real() == doctest::Approx(std::cos(0.7)).epsilon(1e-15));
  CHECK(std::abs(pt.x().imag()) <= 1e-16);
  REQUIRE(pt.theta().has_value());
  CHECK(*pt.theta() == doctest::Approx(0.7).epsilon(1e-15));

  const EvalPointZT off(cplx(1.5, 0.2), cplx(1.0));
  CHECK(!off.theta().has_value());

  const auto px = EvalPointZT::from_x(-0.3);
  CHECK(px.x().real() == doctest::Approx(-0.3).epsilon(1e-14));
}

TEST_CASE("qpoch_finite basic values") {
  const QParam q(0.5);
  CHECK(qpoch_finite(cplx(0.7, 0.0), q, 0) == cplx(1.0));
  CHECK(qpoch_finite(cplx(0.5), q, 2).real() == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(qpoch_finite(cplx(1.0), QParam(0.3), 3) == cplx(0.0));
  CHECK_THROWS_AS(qpoch_finite(cplx(0.5), q, -1), std::invalid_argument);
}

TEST_CASE("qpoch_infinite matches the brute-force product") {
  const QParam q(0.5);
  CHECK(qpoch_infinite(cplx(0.0), q) == cplx(1.0));
  CHECK(qpoch_infinite(cplx(1.0), q) == cplx(0.0));

  const cplx got = qpoch_infinite(cplx(0.5), q);
  const cplx want = product_oracle(cplx(0.5), 0.5);
  CHECK(std::abs(got - want) <= 1e-14 * std::abs(want));

  for (double qv : {0.1, 0.5, 0.9})
    for (cplx a : {cplx(0.8, 0.0), cplx(-0.5, 0.3), cplx(0.0, 0.9)}) {
      const cplx g = qpoch_infinite(a, QParam(qv));
      const cplx w = product_oracle(a, qv);
      CHECK(std::abs(g - w) <= 1e-13 * (1.0 + std::abs(w)));
    }
}

TEST_CASE("qpoch_infinite reports truncation failure with partial value") {
  SeriesControl ctl;
  ctl.max_terms = 4;
  try {
    qpoch_infinite(cplx(0.5), QParam(0.9999), ctl);
    FAIL("expected truncation_error");
  } catch (const truncation_error& e) {
    CHECK(e.terms == 4);
    CHECK(std::abs(e.partial) > 0.0);
  }
}

TEST_CASE("qpoch_general: alpha = 0 and integer-alpha consistency") {
  const QParam q(0.5);
  CHECK(qpoch_general(cplx(0.3), q, 0.0).real() == doctest::Approx(1.0).epsilon(1e-13));

  CHECK(qpoch_general(cplx(0.5), q, 2.0).real() ==
        doctest::Approx(0.375).epsilon(1e-12));

  // fractional alpha: quotient of the two oracle products
  const cplx want = product_oracle(cplx(0.3), 0.4) /
                    product_oracle(cplx(0.3) * std::pow(0.4, 0.5), 0.4);
  const cplx got = qpoch_general(cplx(0.3), QParam(0.4), 0.5);
  CHECK(std::abs(got - want) <= 1e-12 * (1.0 + std::abs(want)));
}

TEST_CASE("qpoch_general consistency sweep against qpoch_finite") {
  for (double qv : {0.1, 0.5, 0.9}) {
    const QParam q(qv);
    for (cplx a : {cplx(0.9, 0.0), cplx(-0.6, 0.2), cplx(0.0, 0.5)})
      for (int n = 0; n <= 20; n += 4) {
        const cplx fin = qpoch_finite(a, q, n);
        const cplx gen = qpoch_general(a, q, n);
        CHECK(std::abs(fin - gen) <= 1e-12 * (1.0 + std::abs(fin)));
      }
  }
}

TEST_CASE("qhyper: argument zero gives 1") {
  const QParam q(0.5);
  HyperSeriesSpec s{{cplx(0.3), cplx(0.2)}, {cplx(0.1)}, cplx(0.0)};
  CHECK(qhyper(s, q) == cplx(1.0));
}

TEST_CASE("qhyper: terminating 3phi2 reproduces the recurrence value of H_2") {
  // H_2(x; a|q) = 4x^2 - 2a(1+q)x + a^2 q - (1-q), expanded from the
  // three-term recurrence; the terminating series must match it.
  const double a = 0.3, qv = 0.5, x = 0.5;  // theta = pi/3
  const QParam q(qv);
  const cplx z = std::polar(1.0, std::acos(x));
  const double h2 = 4 * x * x - 2 * a * (1 + qv) * x + a * a * qv - (1 - qv);
  CHECK(h2 == doctest::Approx(0.095).epsilon(1e-12));

  HyperSeriesSpec s;
  s.upper = {cplx(std::pow(qv, -2)), a * z, a / z};
  s.lower = {cplx(0.0), cplx(0.0)};
  s.argument = qv;
  const cplx got = qhyper(s, q) * std::pow(cplx(a), -2.0);
  CHECK(got.real() == doctest::Approx(h2).epsilon(1e-12));
  CHECK(std::abs(got.imag()) <= 1e-14);
}

TEST_CASE("qhyper: terminating 2phi0 at n = 1 gives 2cos(theta) - a") {
  const double a = 0.4, qv = 0.7, theta = 1.1;
  const QParam q(qv);
  const cplx z = std::polar(1.0, theta);
  HyperSeriesSpec s;
  s.upper = {cplx(1.0 / qv), a * z};
  s.lower = {};
  s.argument = qv / (z * z);
  const cplx got = z * qhyper(s, q);
  CHECK(got.real() == doctest::Approx(2 * std::cos(theta) - a).epsilon(1e-13));
  CHECK(std::abs(got.imag()) <= 1e-14);
}

TEST_CASE("qhyper terminates after exactly n+1 terms for upper q^{-n}") {
  for (double qv : {0.3, 0.5, 0.9}) {
    const QParam q(qv);
    for (int n = 0; n <= 40; n += 5) {
      HyperSeriesSpec s;
      s.upper = {cplx(q.pow(-n)), cplx(0.2, 0.1)};
      s.lower = {cplx(-0.4)};
      s.argument = cplx(0.3, 0.2);
      SeriesStats stats;
      (void)qhyper(s, q, {}, &stats);
      CHECK(stats.terminated);
      CHECK(stats.terms_used == n + 1);
    }
  }
}

TEST_CASE("qhyper rejects lower parameters of the form q^{-k}") {
  const QParam q(0.5);
  HyperSeriesSpec s{{cplx(0.3)}, {cplx(1.0)}, cplx(0.1)};  // (1;q)_n = 0
  CHECK_THROWS_AS(qhyper(s, q), pole_error);
  s.lower = {cplx(4.0)};  // q^{-2}
  CHECK_THROWS_AS(qhyper(s, q), pole_error);
}

TEST_CASE("qhyper raises truncation failure on a non-converging series") {
  const QParam q(0.5);
  SeriesControl ctl;
  ctl.max_terms = 50;
  HyperSeriesSpec s{{cplx(0.9)}, {}, cplx(3.0)};  // 1phi0 with |z| > 1
  CHECK_THROWS_AS(qhyper(s, q, ctl), truncation_error);
}

TEST_CASE("qhyper is deterministic: identical inputs, identical bits") {
  const QParam q(0.7);
  HyperSeriesSpec s{{cplx(0.3, 0.1), cplx(-0.2)}, {cplx(0.5)}, cplx(0.45, -0.1)};
  const cplx v1 = qhyper(s, q);
  const cplx v2 = qhyper(s, q);
  CHECK(std::memcmp(&v1, &v2, sizeof(v1)) == 0);
}
