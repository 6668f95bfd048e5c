#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace qlab {

using cplx = std::complex<double>;

/// Deformation parameter q with its cached fractional powers.
/// Restricted to real q in (0,1); quarter powers are computed by real
/// exponentiation, so there is no branch ambiguity.
struct QParam {
  double q;
  double half_root;     ///< q^{1/2}
  double quarter_root;  ///< q^{1/4}

  explicit QParam(double q_) : q(q_) {
    if (!(q_ > 0.0) || !(q_ < 1.0))
      throw std::invalid_argument("QParam: q must lie in (0,1), got " +
                                  std::to_string(q_));
    quarter_root = std::pow(q_, 0.25);
    half_root = quarter_root * quarter_root;
    const double eps = std::numeric_limits<double>::epsilon();
    const double q4 = quarter_root * quarter_root * quarter_root * quarter_root;
    if (std::abs(q4 - q_) > 4.0 * eps * q_)
      throw std::logic_error("QParam: quarter root inconsistent");
  }

  /// q^e for real exponent e.
  double pow(double e) const { return std::pow(q, e); }
};

/// Truncation policy for the infinite sums and products.
struct SeriesControl {
  double rel_tol = 1e-12;
  double abs_floor = 1e-15;
  int max_terms = 10000;
  int consecutive_small = 3;
};

/// A series or product failed to converge within max_terms.
/// Carries the partial value accumulated before giving up.
class truncation_error : public std::runtime_error {
 public:
  truncation_error(const std::string& what, cplx partial_value, int terms_used)
      : std::runtime_error(what), partial(partial_value), terms(terms_used) {}
  cplx partial;
  int terms;
};

/// A denominator q-Pochhammer product vanished.
class pole_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operator carrying 1/(z - z^{-1}) was evaluated too close to z = +-1.
class singularity_error : public std::domain_error {
 public:
  singularity_error(const std::string& what, cplx at)
      : std::domain_error(what), z(at) {}
  cplx z;
};

/// Sample point (z, t) for the two-variable function space; x = (z + 1/z)/2.
/// theta is defined only when z sits on the unit circle.
struct EvalPointZT {
  cplx z;
  cplx t;

  EvalPointZT(cplx z_, cplx t_ = cplx(1.0, 0.0)) : z(z_), t(t_) {
    if (z == cplx(0.0) || t == cplx(0.0))
      throw std::invalid_argument("EvalPointZT: z and t must be nonzero");
  }

  static EvalPointZT unit_circle(double theta, cplx t = cplx(1.0, 0.0)) {
    return EvalPointZT(std::polar(1.0, theta), t);
  }

  /// x on [-1,1] lifts to z = e^{i acos(x)}.
  static EvalPointZT from_x(double x, cplx t = cplx(1.0, 0.0)) {
    if (x < -1.0 || x > 1.0)
      throw std::invalid_argument("EvalPointZT::from_x: need |x| <= 1");
    return unit_circle(std::acos(x), t);
  }

  cplx x() const { return 0.5 * (z + 1.0 / z); }

  std::optional<double> theta() const {
    if (std::abs(std::abs(z) - 1.0) > 1e-12) return std::nullopt;
    return std::arg(z);
  }
};

}  // namespace qlab
