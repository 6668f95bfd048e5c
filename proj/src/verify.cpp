#include "qlab/verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "qlab/expansion.hpp"
#include "qlab/qexp.hpp"
#include "qlab/quad.hpp"

namespace qlab {

namespace {

constexpr double kTolActions = 1e-10;
constexpr double kTolRelations = 1e-9;
constexpr double kTolOrthoDiag = 1e-7;
constexpr double kTolOrthoOff = 1e-8;
constexpr double kTolEigen = 1e-9;
constexpr double kTolGRec = 1e-12;
constexpr double kTolWRec = 1e-11;
constexpr double kTolExpansion = 1e-8;
constexpr double kTolExactZero = 1e-12;
constexpr int kExpansionOrder = 30;

constexpr double kLimitQ[] = {0.9, 0.99, 0.999};

double row_tol(const SuiteOptions& opt, double fallback) {
  return opt.tol ? *opt.tol : fallback;
}

CheckRow make_row(const SuiteOptions& opt, std::string check, std::string id,
                  std::optional<int> n, std::optional<int> m, double q,
                  double residual, double tol_default) {
  const double tol = row_tol(opt, tol_default);
  return {std::move(check), std::move(id), n, m, q, residual, tol,
          residual <= tol};
}

std::string cplx_id(const std::string& prefix, cplx v) {
  char buf[64];
  if (v.imag() == 0.0)
    std::snprintf(buf, sizeof(buf), "%s=%g", prefix.c_str(), v.real());
  else
    std::snprintf(buf, sizeof(buf), "%s=%g%+gi", prefix.c_str(), v.real(),
                  v.imag());
  return buf;
}

}  // namespace

std::vector<CheckRow> actions_suite(const SuiteOptions& opt) {
  const QParam q(opt.q);
  const PointGrid grid = default_grid();
  std::vector<CheckRow> rows;
  for (BasisAction action : kAllBasisActions)
    for (int n = 0; n <= 6; ++n)
      for (int m = -3; m <= 3; ++m) {
        const double r =
            action_residual(action, {n, m}, grid, q, opt.mutation);
        rows.push_back(make_row(opt, "actions", basis_action_name(action), n,
                                m, opt.q, r, kTolActions));
      }
  return rows;
}

std::vector<CheckRow> relations_suite(const SuiteOptions& opt) {
  const QParam q(opt.q);
  const PointGrid grid = default_grid();
  std::vector<CheckRow> rows;
  for (int rel = 1; rel <= kRelationCount; ++rel)
    for (int n = 0; n <= 6; ++n)
      for (int m = -3; m <= 3; ++m) {
        const double r = relation_residual(rel, {n, m}, grid, q, opt.mutation);
        rows.push_back(make_row(opt, "relations", std::to_string(rel), n, m,
                                opt.q, r, kTolRelations));
      }
  return rows;
}

std::vector<CheckRow> orthogonality_suite(const SuiteOptions& opt) {
  const QParam q(opt.q);
  const ChebyshevRule rule = chebyshev_rule(opt.nodes);
  const auto gram = gram_matrix(opt.n_max, opt.a, q, rule);
  std::vector<CheckRow> rows;
  for (const auto& line : gram)
    for (const auto& e : line) {
      const double tol = (e.m == e.n) ? kTolOrthoDiag : kTolOrthoOff;
      rows.push_back(make_row(opt, "orthogonality", cplx_id("a", opt.a), e.m,
                              e.n, opt.q, e.abs_err, tol));
    }
  return rows;
}

std::vector<CheckRow> expansion_suite(const SuiteOptions& opt) {
  const QParam q(opt.q);
  std::vector<CheckRow> rows;

  // Eigenrelation of the divided difference operator.
  const double theta_grid[] = {0.3, 0.65, 1.0, 1.35, 1.7, 2.05, 2.4, 2.75};
  const cplx eigen_a[] = {{0.0, -1.0}, {0.5, 0.0}, {0.0, 0.5}};
  const double eigen_b[] = {0.1, 0.4};
  for (cplx a : eigen_a)
    for (double b : eigen_b) {
      const double r = qexp_eigen_residual({a, b}, q, theta_grid);
      rows.push_back(make_row(opt, "expansion",
                              "qexp-eigen:" + cplx_id("a", a) + ";" +
                                  cplx_id("b", b),
                              std::nullopt, std::nullopt, opt.q, r,
                              kTolEigen));
    }

  // Three-term recurrence of the x-independent series.
  const cplx g_b[] = {{1.0, 0.0}, {-0.7, 0.0}, {0.0, 0.5}};
  for (cplx b : g_b)
    for (int n = 1; n <= 10; ++n) {
      const double r = g_recurrence_residual(n, b, q);
      rows.push_back(make_row(opt, "expansion",
                              "g-recurrence:" + cplx_id("b", b), n,
                              std::nullopt, opt.q, r, kTolGRec));
    }

  // y-recurrence, the same recurrence met by the expansion separation.
  const cplx y_b[] = {{0.2, 0.0}, {0.0, 0.4}};
  for (cplx b : y_b)
    for (int s = 0; s <= 10; ++s) {
      const cplx ib2 = cplx(0.0, 0.5) * b;
      const cplx y0 = y_series(s, b, q);
      const cplx y1 = y_series(s + 1, b, q);
      const cplx y2 = y_series(s + 2, b, q);
      const cplx rhs = y0 - ib2 * q.pow(0.5 * (s + 0.5)) * y1;
      const double r = std::abs(y2 - rhs) / (1.0 + std::abs(y2));
      rows.push_back(make_row(opt, "expansion",
                              "y-recurrence:" + cplx_id("b", b), s,
                              std::nullopt, opt.q, r, kTolGRec));
    }

  // Coefficient recurrences against the closed form.
  const cplx w_b[] = {{0.2, 0.0}, {0.0, 0.4}};
  for (cplx b : w_b)
    for (int n = 0; n <= 10; ++n)
      for (int m = -5; m <= 5; ++m) {
        const auto [r1, r2, r3] = w_recurrence_residuals(n, m, b, q);
        const std::string suffix = ":" + cplx_id("b", b);
        rows.push_back(make_row(opt, "expansion", "w-ladder" + suffix, n, m,
                                opt.q, r1, kTolWRec));
        rows.push_back(make_row(opt, "expansion", "w-mstep-ladder" + suffix,
                                n, m, opt.q, r2, kTolWRec));
        rows.push_back(make_row(opt, "expansion", "w-mstep" + suffix, n, m,
                                opt.q, r3, kTolWRec));
      }

  // The expansion formulas themselves.
  const double xs[] = {std::cos(0.5), std::cos(1.0), std::cos(2.0)};
  const cplx exp_b[] = {{0.1, 0.0}, {0.4, 0.0}, {0.0, 0.4}};
  const int ms[] = {0, 1, 2, 5};
  for (double x : xs)
    for (cplx b : exp_b) {
      const EvalPointZT pt = EvalPointZT::from_x(x);
      for (int m : ms) {
        const double r = expansion_residual(pt, m, b, q, kExpansionOrder);
        rows.push_back(make_row(opt, "expansion",
                                "expansion-big:" + cplx_id("b", b) + ";" +
                                    cplx_id("x", x),
                                std::nullopt, m, opt.q, r, kTolExpansion));
      }
      const double r =
          qhermite_expansion_residual(pt, b, q, kExpansionOrder);
      rows.push_back(make_row(opt, "expansion",
                              "expansion-qhermite:" + cplx_id("b", b) + ";" +
                                  cplx_id("x", x),
                              std::nullopt, std::nullopt, opt.q, r,
                              kTolExpansion));
    }

  return rows;
}

std::vector<CheckRow> limits_suite(const SuiteOptions& opt) {
  std::vector<CheckRow> rows;
  const double inf = std::numeric_limits<double>::infinity();

  // Decreasing-residual sequences: a row passes when its residual improves
  // on the previous q in its sequence (tol column holds that bound).
  auto push_sequence = [&](const std::string& id,
                           const std::vector<double>& res) {
    double prev = inf;
    for (size_t i = 0; i < res.size(); ++i) {
      const double tol = opt.tol ? *opt.tol : prev;
      rows.push_back({"limits", id, std::nullopt, std::nullopt, kLimitQ[i],
                      res[i], tol, res[i] <= tol});
      prev = res[i];
    }
  };

  push_sequence("poly-limit:n=3",
                classical_limit_residual_poly(3, 0.4, 0.2, kLimitQ));
  push_sequence("qexp-limit-planewave",
                classical_limit_residual_qexp(0.5, 1.0, kLimitQ));
  push_sequence("qexp-limit-general:a=0.3",
                classical_limit_residual_qexp_general(0.5, 0.3, 1.0, kLimitQ));

  // Exactly representable cases: residual 0 for every q.
  const auto exact_poly = classical_limit_residual_poly(1, 0.3, 0.7, kLimitQ);
  for (size_t i = 0; i < exact_poly.size(); ++i)
    rows.push_back(make_row(opt, "limits", "poly-limit:n=1", 1, std::nullopt,
                            kLimitQ[i], exact_poly[i], kTolExactZero));

  // Generator limits on f_2^0 against finite differences.
  const PointGrid grid = default_grid();
  const auto gen_rows = classical_limit_residual_gens(
      kLimitQ, [](const QParam& q) { return basis({2, 0}, q); }, grid, 1e-5,
      opt.mutation);
  const char* names[] = {"gen-limit:A+", "gen-limit:A-", "gen-limit:B+",
                         "gen-limit:B-", "scale-limit:K"};
  for (int which = 0; which < 5; ++which) {
    double prev = inf;
    for (const auto& row : gen_rows) {
      const double r = (which == 0)   ? row.a_plus
                       : (which == 1) ? row.a_minus
                       : (which == 2) ? row.b_plus
                       : (which == 3) ? row.b_minus
                                      : row.k_scale;
      const double tol = opt.tol ? *opt.tol : prev;
      rows.push_back({"limits", names[which], 2, 0, row.q, r, tol, r <= tol});
      prev = r;
    }
  }

  // f_2^0 carries no t-dependence, so its K row is trivially zero; f_1^2
  // exercises the t-scaling limit with a genuine residual.
  const auto gen_rows_t = classical_limit_residual_gens(
      kLimitQ, [](const QParam& q) { return basis({1, 2}, q); }, grid, 1e-5,
      opt.mutation);
  {
    double prev = inf;
    for (const auto& row : gen_rows_t) {
      const double tol = opt.tol ? *opt.tol : prev;
      rows.push_back({"limits", "scale-limit:K", 1, 2, row.q, row.k_scale, tol,
                      row.k_scale <= tol});
      prev = row.k_scale;
    }
  }

  // Monomial eigenfunction of the t-scaling: (1-K)/(1-q) t = t exactly.
  for (double qv : kLimitQ) {
    const QParam q(qv);
    const FunctionHandle f = basis({0, 1}, q);
    const FunctionHandle kf = gen_apply(Generator::K, f, q, opt.mutation);
    double worst = 0.0;
    for (const auto& [z, t] : grid.points) {
      const cplx got = (f(z, t) - kf(z, t)) / (1.0 - qv);
      worst = std::max(worst, std::abs(got - t) / (1.0 + std::abs(t)));
    }
    rows.push_back(make_row(opt, "limits", "scale-limit-exact:t", 0, 1, qv,
                            worst, kTolExactZero));
  }

  return rows;
}

std::vector<CheckRow> all_suites(const SuiteOptions& opt) {
  std::vector<CheckRow> rows = actions_suite(opt);
  auto append = [&rows](std::vector<CheckRow> more) {
    rows.insert(rows.end(), std::make_move_iterator(more.begin()),
                std::make_move_iterator(more.end()));
  };
  append(relations_suite(opt));
  append(orthogonality_suite(opt));
  append(expansion_suite(opt));
  append(limits_suite(opt));
  return rows;
}

bool all_pass(const std::vector<CheckRow>& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

namespace {

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

std::string fmt_q(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// RFC-4180-style quoting; only needed when a field contains , or ".
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_rows_csv(std::ostream& os, const std::vector<CheckRow>& rows) {
  os << "check,relation_id,n,m,q,residual,tol,status\n";
  for (const auto& r : rows) {
    os << csv_field(r.check) << ',' << csv_field(r.id) << ',';
    if (r.n) os << *r.n;
    os << ',';
    if (r.m) os << *r.m;
    os << ',' << fmt_q(r.q) << ',' << fmt_double(r.residual) << ','
       << fmt_double(r.tol) << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
  }
}

void write_rows_json(std::ostream& os, const std::vector<CheckRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json obj;
    obj["check"] = r.check;
    obj["relation_id"] = r.id;
    if (r.n)
      obj["n"] = *r.n;
    else
      obj["n"] = nullptr;
    if (r.m)
      obj["m"] = *r.m;
    else
      obj["m"] = nullptr;
    obj["q"] = r.q;
    obj["residual"] = std::isinf(r.residual) ? nlohmann::ordered_json("inf")
                                             : nlohmann::ordered_json(r.residual);
    obj["tol"] =
        std::isinf(r.tol) ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(r.tol);
    obj["status"] = r.pass ? "PASS" : "FAIL";
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

}  // namespace qlab
