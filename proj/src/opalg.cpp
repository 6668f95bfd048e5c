#include "qlab/opalg.hpp"

#include <cmath>

namespace qlab {

namespace {

// Hard floor for the 1/(z - 1/z) denominators, well below any grid guard.
constexpr double kHardGuard = 1e-8;

cplx guarded_denominator(cplx z) {
  if (std::abs(z * z - 1.0) < kHardGuard)
    throw singularity_error("operator evaluated too close to z = +-1", z);
  return z - 1.0 / z;
}

cplx mutation_factor(Generator g, const GeneratorMutation& mut) {
  return (mut.target && *mut.target == g) ? cplx(mut.scale) : cplx(1.0);
}

}  // namespace

std::string generator_name(Generator g) {
  switch (g) {
    case Generator::APlus: return "A+";
    case Generator::AMinus: return "A-";
    case Generator::BPlus: return "B+";
    case Generator::BMinus: return "B-";
    case Generator::K: return "K";
    case Generator::KHalf: return "K1/2";
    case Generator::P: return "P";
    case Generator::Q: return "Q";
    case Generator::Id: return "Id";
  }
  return "?";
}

std::optional<Generator> generator_from_name(const std::string& name) {
  if (name == "A+") return Generator::APlus;
  if (name == "A-") return Generator::AMinus;
  if (name == "B+") return Generator::BPlus;
  if (name == "B-") return Generator::BMinus;
  if (name == "K") return Generator::K;
  if (name == "K1/2" || name == "Khalf") return Generator::KHalf;
  if (name == "P") return Generator::P;
  if (name == "Q") return Generator::Q;
  if (name == "Id") return Generator::Id;
  return std::nullopt;
}

void PointGrid::validate() const {
  for (const auto& [z, t] : points) {
    if (std::abs(z * z - 1.0) < delta_guard)
      throw singularity_error("PointGrid: |z^2 - 1| below delta_guard", z);
    if (t == cplx(0.0))
      throw singularity_error("PointGrid: t must be nonzero", z);
  }
}

PointGrid default_grid() {
  PointGrid g;
  g.delta_guard = 0.1;
  auto circle = [](double theta) { return std::polar(1.0, theta); };
  g.points = {
      {circle(0.4), 0.5}, {circle(1.0), 1.0}, {circle(1.7), 2.0},
      {circle(2.4), 0.5}, {circle(2.9), 1.0}, {cplx(1.5, 0.2), 2.0},
      {cplx(0.6, -0.4), 0.5}, {cplx(2.0, 0.3), 1.0}, {cplx(0.0, 0.5), 2.0},
      {cplx(-1.3, 0.5), 0.5},
  };
  g.validate();
  return g;
}

FunctionHandle apply_shift(const FunctionHandle& f, const ShiftSpec& spec,
                           const QParam& q) {
  const double za = q.pow(spec.alpha);
  const double tb = q.pow(spec.beta);
  return {[f, za, tb](cplx z, cplx t) { return f(za * z, tb * t); },
          "T[" + f.label + "]"};
}

FunctionHandle basis(const BasisIndex& idx, const QParam& q) {
  if (idx.n < 0) throw std::invalid_argument("basis: n must be >= 0");
  const int n = idx.n;
  const int m = idx.m;
  const cplx a = q.pow(0.5 * m);
  QParam qq = q;
  return {[n, m, a, qq](cplx z, cplx t) {
            const cplx x = 0.5 * (z + 1.0 / z);
            return std::pow(t, m) * hermite_recurrence(n, x, a, qq)[n];
          },
          "f_" + std::to_string(n) + "^" + std::to_string(m)};
}

FunctionHandle tau_apply(const FunctionHandle& f, const QParam& q) {
  const double rh = q.half_root;
  return {[f, rh](cplx z, cplx t) {
            const cplx den = guarded_denominator(z);
            return (f(rh * z, t) - f(z / rh, t)) / den;
          },
          "tau[" + f.label + "]"};
}

FunctionHandle gen_apply(Generator g, const FunctionHandle& f, const QParam& q,
                         const GeneratorMutation& mut) {
  const double rh = q.half_root;
  const double rhi = 1.0 / rh;
  const double qv = q.q;
  const cplx mscale = mutation_factor(g, mut);
  const std::string label = generator_name(g) + "[" + f.label + "]";

  switch (g) {
    case Generator::APlus:
      return {[f, rh, mscale](cplx z, cplx t) {
                const cplx den = guarded_denominator(z);
                return mscale * t / den * (f(rh * z, t) - f(z / rh, t));
              },
              label};
    case Generator::AMinus:
      return {[f, rh, rhi, mscale](cplx z, cplx t) {
                const cplx den = guarded_denominator(z);
                const cplx z2 = z * z;
                const cplx up = f(rh * z, t) - rhi * z * f(rh * z, rh * t);
                const cplx dn = f(z / rh, t) - rhi / z * f(z / rh, rh * t);
                return mscale * rhi / (t * den) * (up / z2 - z2 * dn);
              },
              label};
    case Generator::BPlus:
      return {[f, rh, mscale](cplx z, cplx t) {
                const cplx den = guarded_denominator(z);
                return mscale * t / den *
                       (z * f(z / rh, t) - f(rh * z, t) / z);
              },
              label};
    case Generator::BMinus:
      return {[f, rh, rhi, mscale](cplx z, cplx t) {
                const cplx den = guarded_denominator(z);
                const cplx dn = f(z / rh, t) - rhi / z * f(z / rh, rh * t);
                const cplx up = f(rh * z, t) - rhi * z * f(rh * z, rh * t);
                return mscale / (t * den) * (z * dn - up / z);
              },
              label};
    case Generator::K:
      return {[f, qv, mscale](cplx z, cplx t) { return mscale * f(z, qv * t); },
              label};
    case Generator::KHalf:
      return {[f, rh, mscale](cplx z, cplx t) { return mscale * f(z, rh * t); },
              label};
    case Generator::P:
      return {[f, mscale](cplx z, cplx t) {
                return mscale * (z + 1.0 / z) * f(z, t);
              },
              label};
    case Generator::Q:
      return {[f, mscale](cplx z, cplx t) { return mscale * t * t * f(z, t); },
              label};
    case Generator::Id:
      return f;
  }
  throw std::logic_error("gen_apply: unknown generator");
}

// ---------------------------------------------------------------------------
// Operator expressions

struct OperatorExpr::Node {
  enum class Kind { Gen, Scale, Sum, Compose };
  Kind kind;
  Generator g = Generator::Id;
  cplx scalar = 1.0;
  NodePtr lhs;
  NodePtr rhs;
};

OperatorExpr OperatorExpr::generator(Generator g) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Gen;
  node->g = g;
  return OperatorExpr(std::move(node));
}

OperatorExpr OperatorExpr::identity() { return generator(Generator::Id); }

OperatorExpr OperatorExpr::word(std::initializer_list<Generator> gens) {
  OperatorExpr e = identity();
  bool first = true;
  for (Generator g : gens) {
    e = first ? generator(g) : e * generator(g);
    first = false;
  }
  return e;
}

OperatorExpr OperatorExpr::operator*(const OperatorExpr& rhs) const {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Compose;
  node->lhs = root_;
  node->rhs = rhs.root_;
  return OperatorExpr(std::move(node));
}

OperatorExpr OperatorExpr::operator+(const OperatorExpr& rhs) const {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Sum;
  node->lhs = root_;
  node->rhs = rhs.root_;
  return OperatorExpr(std::move(node));
}

OperatorExpr OperatorExpr::operator-(const OperatorExpr& rhs) const {
  return *this + (cplx(-1.0) * rhs);
}

OperatorExpr operator*(cplx scalar, const OperatorExpr& e) {
  auto node = std::make_shared<OperatorExpr::Node>();
  node->kind = OperatorExpr::Node::Kind::Scale;
  node->scalar = scalar;
  node->lhs = e.root_;
  return OperatorExpr(std::move(node));
}

int OperatorExpr::word_length() const {
  std::function<int(const Node*)> walk = [&walk](const Node* n) -> int {
    using Kind = Node::Kind;
    if (!n) return 0;
    switch (n->kind) {
      case Kind::Gen:
        return n->g == Generator::Id ? 0 : 1;
      case Kind::Scale:
        return walk(n->lhs.get());
      case Kind::Sum:
        return std::max(walk(n->lhs.get()), walk(n->rhs.get()));
      case Kind::Compose:
        return walk(n->lhs.get()) + walk(n->rhs.get());
    }
    return 0;
  };
  return walk(root_.get());
}

FunctionHandle expr_apply(const OperatorExpr& e, const FunctionHandle& f,
                          const QParam& q, const GeneratorMutation& mut,
                          int word_max) {
  if (e.word_length() > word_max)
    throw std::invalid_argument("expr_apply: word length exceeds word_max");

  using Node = OperatorExpr::Node;
  using Kind = Node::Kind;
  std::function<FunctionHandle(const Node*, const FunctionHandle&)> build =
      [&](const Node* n, const FunctionHandle& arg) -> FunctionHandle {
    switch (n->kind) {
      case Kind::Gen:
        return gen_apply(n->g, arg, q, mut);
      case Kind::Scale: {
        FunctionHandle inner = build(n->lhs.get(), arg);
        const cplx s = n->scalar;
        return {[inner, s](cplx z, cplx t) { return s * inner(z, t); },
                inner.label};
      }
      case Kind::Sum: {
        FunctionHandle a = build(n->lhs.get(), arg);
        FunctionHandle b = build(n->rhs.get(), arg);
        return {[a, b](cplx z, cplx t) { return a(z, t) + b(z, t); },
                a.label + "+" + b.label};
      }
      case Kind::Compose: {
        FunctionHandle inner = build(n->rhs.get(), arg);
        return build(n->lhs.get(), inner);
      }
    }
    throw std::logic_error("expr_apply: unknown node kind");
  };
  return build(e.root_.get(), f);
}

// ---------------------------------------------------------------------------
// Basis actions

std::string basis_action_name(BasisAction a) {
  switch (a) {
    case BasisAction::APlus: return "A+";
    case BasisAction::AMinus: return "A-";
    case BasisAction::BPlus: return "B+";
    case BasisAction::BMinus: return "B-";
    case BasisAction::K: return "K";
    case BasisAction::P: return "P";
    case BasisAction::Q: return "Q";
  }
  return "?";
}

double action_residual(BasisAction action, const BasisIndex& idx,
                       const PointGrid& grid, const QParam& q,
                       const GeneratorMutation& mut) {
  grid.validate();
  const int n = idx.n;
  const int m = idx.m;

  // RHS as scalar-weighted basis handles; f_{n-1} terms drop at n = 0.
  std::vector<std::pair<cplx, FunctionHandle>> rhs;
  Generator gen = Generator::Id;
  switch (action) {
    case BasisAction::APlus:
      gen = Generator::APlus;
      if (n >= 1)
        rhs.push_back({-q.pow(-0.5 * n) * (1.0 - q.pow(n)),
                       basis({n - 1, m + 1}, q)});
      break;
    case BasisAction::AMinus:
      gen = Generator::AMinus;
      rhs.push_back({-q.pow(-0.5 * (n + 1)), basis({n + 1, m - 1}, q)});
      break;
    case BasisAction::BPlus:
      gen = Generator::BPlus;
      rhs.push_back({q.pow(-0.5 * n), basis({n, m + 1}, q)});
      break;
    case BasisAction::BMinus:
      gen = Generator::BMinus;
      rhs.push_back({q.pow(-0.5 * n), basis({n, m - 1}, q)});
      break;
    case BasisAction::K:
      gen = Generator::K;
      rhs.push_back({q.pow(m), basis({n, m}, q)});
      break;
    case BasisAction::P:
      gen = Generator::P;
      rhs.push_back({1.0, basis({n + 1, m}, q)});
      rhs.push_back({q.pow(n + 0.5 * m), basis({n, m}, q)});
      if (n >= 1) rhs.push_back({1.0 - q.pow(n), basis({n - 1, m}, q)});
      break;
    case BasisAction::Q:
      gen = Generator::Q;
      rhs.push_back({1.0, basis({n, m + 2}, q)});
      if (n >= 1)
        rhs.push_back({-q.pow(0.5 * m) * (1.0 - q.pow(n)),
                       basis({n - 1, m + 2}, q)});
      break;
  }

  const FunctionHandle lhs = gen_apply(gen, basis({n, m}, q), q, mut);
  double worst = 0.0;
  for (const auto& [z, t] : grid.points) {
    const cplx l = lhs(z, t);
    cplx r = 0.0;
    for (const auto& [c, h] : rhs) r += c * h(z, t);
    worst = std::max(worst, std::abs(l - r) / (1.0 + std::abs(l)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Relations

namespace {

// Every relation has the shape  c1*(word1) + c2*(word2) = rhs. Keeping the
// two words separate lets the residual be normalized by their magnitudes:
// the left side cancels almost exactly, so |word f| is the scale the
// rounding error lives on.
struct Relation {
  cplx c1;
  OperatorExpr w1;
  cplx c2;
  OperatorExpr w2;
  std::optional<OperatorExpr> rhs;
  std::string text;
};

Relation make_relation(int rel_id, const QParam& q) {
  using G = Generator;
  auto w = [](G a, G b) { return OperatorExpr::word({a, b}); };
  auto gen = [](G a) { return OperatorExpr::generator(a); };
  const cplx qv = q.q;
  const cplx rq = q.half_root;
  const cplx one_minus_q = 1.0 - q.q;

  switch (rel_id) {
    case 1:
      return {1.0, w(G::AMinus, G::APlus), -qv, w(G::APlus, G::AMinus),
              -one_minus_q * OperatorExpr::identity(),
              "A-A+ - q A+A- = -(1-q)"};
    case 2:
      return {1.0, w(G::BPlus, G::APlus), -rq, w(G::APlus, G::BPlus),
              std::nullopt, "B+A+ - q^{1/2} A+B+ = 0"};
    case 3:
      return {1.0, w(G::AMinus, G::BPlus), -rq, w(G::BPlus, G::AMinus),
              std::nullopt, "A-B+ - q^{1/2} B+A- = 0"};
    case 4:
      return {1.0, w(G::APlus, G::P), -rq, w(G::P, G::APlus),
              (-one_minus_q / rq) * gen(G::BPlus),
              "A+P - q^{1/2} PA+ = -q^{-1/2}(1-q) B+"};
    case 5:
      return {rq, w(G::BPlus, G::P), -1.0, w(G::P, G::BPlus),
              one_minus_q * gen(G::APlus), "q^{1/2} B+P - PB+ = (1-q) A+"};
    case 6:
      return {1.0, w(G::APlus, G::Q), -1.0, w(G::Q, G::APlus), std::nullopt,
              "A+Q - QA+ = 0"};
    case 7:
      return {1.0, w(G::BPlus, G::Q), -1.0, w(G::Q, G::BPlus), std::nullopt,
              "B+Q - QB+ = 0"};
    case 8:
      return {1.0, w(G::K, G::APlus), -qv, w(G::APlus, G::K), std::nullopt,
              "KA+ - q A+K = 0"};
    case 9:
      return {1.0, w(G::K, G::BPlus), -qv, w(G::BPlus, G::K), std::nullopt,
              "KB+ - q B+K = 0"};
    case 10:
      return {1.0, w(G::K, G::P), -1.0, w(G::P, G::K), std::nullopt,
              "KP - PK = 0"};
    case 11:
      return {1.0, w(G::BPlus, G::BMinus), -1.0, w(G::BMinus, G::BPlus),
              std::nullopt, "B+B- - B-B+ = 0"};
    case 12:
      return {1.0, w(G::BMinus, G::APlus), -rq, w(G::APlus, G::BMinus),
              std::nullopt, "B-A+ - q^{1/2} A+B- = 0"};
    case 13:
      return {1.0, w(G::AMinus, G::BMinus), -rq, w(G::BMinus, G::AMinus),
              std::nullopt, "A-B- - q^{1/2} B-A- = 0"};
    case 14:
      return {1.0, w(G::AMinus, G::P), -cplx(1.0) / rq, w(G::P, G::AMinus),
              (one_minus_q / qv) * gen(G::BMinus),
              "A-P - q^{-1/2} PA- = q^{-1}(1-q) B-"};
    case 15:
      return {1.0, w(G::BMinus, G::P), -rq, w(G::P, G::BMinus),
              -one_minus_q * gen(G::AMinus), "B-P - q^{1/2} PB- = -(1-q) A-"};
    case 16:
      return {1.0, w(G::Q, G::AMinus), -1.0, w(G::AMinus, G::Q),
              (one_minus_q / qv) * w(G::BPlus, G::KHalf),
              "QA- - A-Q = q^{-1}(1-q) B+K^{1/2}"};
    case 17:
      return {1.0, w(G::BMinus, G::Q), -qv, w(G::Q, G::BMinus),
              one_minus_q * gen(G::BPlus), "B-Q - q QB- = (1-q) B+"};
    case 18:
      return {1.0, w(G::K, G::AMinus), -cplx(1.0) / qv, w(G::AMinus, G::K),
              std::nullopt, "KA- - q^{-1} A-K = 0"};
    case 19:
      return {1.0, w(G::K, G::BMinus), -cplx(1.0) / qv, w(G::BMinus, G::K),
              std::nullopt, "KB- - q^{-1} B-K = 0"};
    case 20:
      return {1.0, w(G::K, G::Q), -qv * qv, w(G::Q, G::K), std::nullopt,
              "KQ - q^2 QK = 0"};
    default:
      throw std::invalid_argument("relation id must be 1..20");
  }
}

}  // namespace

std::string relation_text(int rel_id) {
  return make_relation(rel_id, QParam(0.5)).text;
}

double relation_residual(int rel_id, const BasisIndex& idx,
                         const PointGrid& grid, const QParam& q,
                         const GeneratorMutation& mut) {
  grid.validate();
  const Relation rel = make_relation(rel_id, q);
  const FunctionHandle f = basis(idx, q);
  const FunctionHandle w1 = expr_apply(rel.w1, f, q, mut);
  const FunctionHandle w2 = expr_apply(rel.w2, f, q, mut);
  std::optional<FunctionHandle> rhs;
  if (rel.rhs) rhs = expr_apply(*rel.rhs, f, q, mut);

  double worst = 0.0;
  for (const auto& [z, t] : grid.points) {
    const cplx l1 = rel.c1 * w1(z, t);
    const cplx l2 = rel.c2 * w2(z, t);
    const cplx r = rhs ? (*rhs)(z, t) : cplx(0.0);
    const double scale = std::abs(l1) + std::abs(l2) + std::abs(r);
    worst = std::max(worst, std::abs(l1 + l2 - r) / (1.0 + scale));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Classical limits of the generators

namespace {

// Root of z^2 - 2x z + 1 = 0 closest to z_ref, i.e. the branch of z(x)
// continuing the current point. Used to take finite differences in x.
cplx z_from_x_near(cplx x, cplx z_ref) {
  const cplx s = std::sqrt(x * x - 1.0);
  const cplx r1 = x + s;
  const cplx r2 = x - s;
  return (std::abs(r1 - z_ref) <= std::abs(r2 - z_ref)) ? r1 : r2;
}

}  // namespace

std::vector<GenLimitRow> classical_limit_residual_gens(
    std::span<const double> q_list, const FunctionHandle& f,
    const PointGrid& grid, double h) {
  return classical_limit_residual_gens(
      q_list, [&f](const QParam&) { return f; }, grid, h);
}

std::vector<GenLimitRow> classical_limit_residual_gens(
    std::span<const double> q_list,
    const std::function<FunctionHandle(const QParam&)>& make_f,
    const PointGrid& grid, double h, const GeneratorMutation& mut) {
  grid.validate();
  std::vector<GenLimitRow> rows;
  rows.reserve(q_list.size());

  for (double qv : q_list) {
    const QParam q(qv);
    const FunctionHandle f = make_f(q);
    const FunctionHandle ap = gen_apply(Generator::APlus, f, q, mut);
    const FunctionHandle am = gen_apply(Generator::AMinus, f, q, mut);
    const FunctionHandle bp = gen_apply(Generator::BPlus, f, q, mut);
    const FunctionHandle bm = gen_apply(Generator::BMinus, f, q, mut);
    const FunctionHandle kf = gen_apply(Generator::K, f, q, mut);

    GenLimitRow row{qv, 0.0, 0.0, 0.0, 0.0, 0.0};
    for (const auto& [z, t] : grid.points) {
      const cplx x = 0.5 * (z + 1.0 / z);
      const cplx zp = z_from_x_near(x + h, z);
      const cplx zm = z_from_x_near(x - h, z);
      const cplx fx = (f(zp, t) - f(zm, t)) / (2.0 * h);
      const cplx ft = (f(z, t + h) - f(z, t - h)) / (2.0 * h);

      auto update = [](double& worst, cplx got, cplx want) {
        worst = std::max(worst,
                         std::abs(got - want) / (1.0 + std::abs(want)));
      };
      update(row.a_plus, ap(z, t) / (1.0 - qv), -0.5 * t * fx);
      update(row.a_minus, am(z, t), -(2.0 * x - 1.0) / t * f(z, t));
      update(row.b_plus, bp(z, t), t * f(z, t));
      update(row.b_minus, bm(z, t), f(z, t) / t);
      update(row.k_scale, (f(z, t) - kf(z, t)) / (1.0 - qv), t * ft);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qlab
