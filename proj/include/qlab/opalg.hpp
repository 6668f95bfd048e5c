#pragma once

#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qlab/polys.hpp"
#include "qlab/types.hpp"

namespace qlab {

/// An evaluable map (z, t) -> complex, the carrier the operators act on.
/// Handles are immutable after construction; applying an operator returns a
/// new handle. Evaluation is deterministic and side-effect free.
struct FunctionHandle {
  std::function<cplx(cplx, cplx)> fn;
  std::string label;

  cplx operator()(cplx z, cplx t) const { return fn(z, t); }
};

/// Exponents of the q-shift substitutions z -> q^alpha z, t -> q^beta t.
struct ShiftSpec {
  double alpha = 0.0;
  double beta = 0.0;
};

/// The generators acting on functions of (z, t):
///   APlus  = t/(z - 1/z) (T_z^{1/2} - T_z^{-1/2})
///   AMinus = q^{-1/2}/(t (z - 1/z)) [ z^{-2} (1 - q^{-1/2} z T_t^{1/2}) T_z^{1/2}
///                                   - z^2 (1 - q^{-1/2} z^{-1} T_t^{1/2}) T_z^{-1/2} ]
///   BPlus  = t/(z - 1/z) (z T_z^{-1/2} - z^{-1} T_z^{1/2})
///   BMinus = 1/(t (z - 1/z)) [ z (1 - q^{-1/2} z^{-1} T_t^{1/2}) T_z^{-1/2}
///                            - z^{-1} (1 - q^{-1/2} z T_t^{1/2}) T_z^{1/2} ]
///   K      = T_t,  KHalf = T_t^{1/2},  P = mult. by (z + 1/z),  Q = mult. by t^2.
enum class Generator { APlus, AMinus, BPlus, BMinus, K, KHalf, P, Q, Id };

std::string generator_name(Generator g);
std::optional<Generator> generator_from_name(const std::string& name);

/// Debug knob: scales the output of one generator, used by the mutation test
/// that proves the verification suites actually detect corrupted formulas.
struct GeneratorMutation {
  std::optional<Generator> target;
  double scale = 1.0 + 1e-3;
};

/// Index (n, m) of the basis function f_n^m(x, t) = t^m H_n(x; q^{m/2}|q),
/// with n >= 0 and m any integer.
struct BasisIndex {
  int n;
  int m;
};

/// Fixed sample points for residual checks. Every point keeps |z^2 - 1| >=
/// delta_guard so the 1/(z - 1/z) factors stay finite, and t != 0.
struct PointGrid {
  std::vector<std::pair<cplx, cplx>> points;
  double delta_guard = 0.1;

  /// Throws singularity_error if any point violates the guard.
  void validate() const;
};

/// The default 10-point grid: five unit-circle z, five off-circle z, t drawn
/// from {0.5, 1, 2}. Chosen so that all z-shifts by q^{+-1/2} and q^{+-1}
/// with q in [0.25, 0.8] stay clear of z = +-1.
PointGrid default_grid();

/// (T_z^alpha T_t^beta f)(z, t) = f(q^alpha z, q^beta t).
/// Composing shifts adds exponents.
FunctionHandle apply_shift(const FunctionHandle& f, const ShiftSpec& spec,
                           const QParam& q);

/// The basis function f_n^m as a handle; defined for every z != 0 since H_n
/// is a polynomial in x = (z + 1/z)/2.
FunctionHandle basis(const BasisIndex& idx, const QParam& q);

/// Apply one generator. The returned handle raises singularity_error when
/// evaluated with |z^2 - 1| below a hard floor.
FunctionHandle gen_apply(Generator g, const FunctionHandle& f, const QParam& q,
                         const GeneratorMutation& mut = {});

/// The divided difference operator tau = (T_z^{1/2} - T_z^{-1/2})/(z - 1/z);
/// APlus is t * tau.
FunctionHandle tau_apply(const FunctionHandle& f, const QParam& q);

/// AST of scalar-weighted words in the generators. Composition applies
/// right-to-left: word({AMinus, APlus}) applies APlus first.
class OperatorExpr {
 public:
  static OperatorExpr generator(Generator g);
  static OperatorExpr identity();
  static OperatorExpr word(std::initializer_list<Generator> gens);

  OperatorExpr operator*(const OperatorExpr& rhs) const;  // composition
  OperatorExpr operator+(const OperatorExpr& rhs) const;
  OperatorExpr operator-(const OperatorExpr& rhs) const;
  friend OperatorExpr operator*(cplx scalar, const OperatorExpr& e);

  /// Longest generator word in the expression.
  int word_length() const;

  friend FunctionHandle expr_apply(const OperatorExpr& e,
                                   const FunctionHandle& f, const QParam& q,
                                   const GeneratorMutation& mut, int word_max);

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  explicit OperatorExpr(NodePtr root) : root_(std::move(root)) {}
  NodePtr root_;
};

/// Evaluate an operator expression on f. Words longer than word_max are
/// rejected (evaluation cost grows as 2^length).
FunctionHandle expr_apply(const OperatorExpr& e, const FunctionHandle& f,
                          const QParam& q, const GeneratorMutation& mut = {},
                          int word_max = 4);

/// The seven basis actions, one per generator that maps f_n^m into the span:
///   APlus  f_n^m = -q^{-n/2} (1 - q^n) f_{n-1}^{m+1}
///   AMinus f_n^m = -q^{-(n+1)/2} f_{n+1}^{m-1}
///   BPlus  f_n^m = q^{-n/2} f_n^{m+1}
///   BMinus f_n^m = q^{-n/2} f_n^{m-1}
///   K      f_n^m = q^m f_n^m
///   P      f_n^m = f_{n+1}^m + q^{n+m/2} f_n^m + (1 - q^n) f_{n-1}^m
///   Q      f_n^m = f_n^{m+2} - q^{m/2} (1 - q^n) f_{n-1}^{m+2}
/// (f_{n-1} terms drop at n = 0: their coefficients vanish).
enum class BasisAction { APlus, AMinus, BPlus, BMinus, K, P, Q };

std::string basis_action_name(BasisAction a);
constexpr BasisAction kAllBasisActions[] = {
    BasisAction::APlus, BasisAction::AMinus, BasisAction::BPlus,
    BasisAction::BMinus, BasisAction::K,     BasisAction::P,
    BasisAction::Q};

/// sup over the grid of |LHS - RHS| / (1 + |LHS|) where LHS applies the
/// generator through gen_apply and RHS combines independently evaluated
/// basis handles.
double action_residual(BasisAction action, const BasisIndex& idx,
                       const PointGrid& grid, const QParam& q,
                       const GeneratorMutation& mut = {});

/// Number of defining relations of the algebra; see relation_text().
inline constexpr int kRelationCount = 20;

/// Human-readable form of relation rel_id (1-based, fixed table order).
std::string relation_text(int rel_id);

/// Normalized sup-over-grid residual of relation rel_id applied to basis(idx).
double relation_residual(int rel_id, const BasisIndex& idx,
                         const PointGrid& grid, const QParam& q,
                         const GeneratorMutation& mut = {});

/// Residuals of the q -> 1^- generator limits on a test handle:
///   APlus/(1-q) -> -(t/2) d/dx,  AMinus -> -(2x-1)/t,  BPlus -> t,
///   BMinus -> 1/t,  (1-K)/(1-q) -> t d/dt,
/// with the derivatives supplied by central finite differences (step h).
struct GenLimitRow {
  double q;
  double a_plus;
  double a_minus;
  double b_plus;
  double b_minus;
  double k_scale;
};

std::vector<GenLimitRow> classical_limit_residual_gens(
    std::span<const double> q_list, const FunctionHandle& f,
    const PointGrid& grid, double h = 1e-5);

/// Variant for test functions that themselves depend on q (the basis
/// functions do, through a = q^{m/2}): the factory is invoked once per q.
std::vector<GenLimitRow> classical_limit_residual_gens(
    std::span<const double> q_list,
    const std::function<FunctionHandle(const QParam&)>& make_f,
    const PointGrid& grid, double h = 1e-5,
    const GeneratorMutation& mut = {});

}  // namespace qlab
