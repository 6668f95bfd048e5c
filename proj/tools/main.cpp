// qlab: evaluation, table generation, and identity-verification CLI for the
// continuous big q-Hermite polynomial and q-oscillator algebra library.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlab/expansion.hpp"
#include "qlab/polys.hpp"
#include "qlab/qexp.hpp"
#include "qlab/quad.hpp"
#include "qlab/verify.hpp"

namespace {

using qlab::cplx;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15e", v);
  return buf;
}

int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    std::cerr << "error: cannot open output file " << path << "\n";
    return 2;
  }
  os << text;
  return 0;
}

struct CommonOut {
  std::string format = "csv";
  std::string output;
};

void add_output_flags(CLI::App* cmd, CommonOut& out) {
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", out.output, "Write to file instead of stdout");
}

int run_eval_poly(int n, double qv, double a_re, double a_im, double x,
                  const CommonOut& out) {
  const qlab::QParam q(qv);
  const cplx a(a_re, a_im);
  const auto pt = qlab::EvalPointZT::from_x(x);

  const cplx rec = qlab::hermite_recurrence(n, pt, a, q)[n];
  const cplx s20 = qlab::hermite_2phi0({n, a, q}, pt);
  std::optional<cplx> s32;
  if (a != cplx(0.0)) s32 = qlab::hermite_3phi2({n, a, q}, pt);

  double dev = std::abs(rec - s20);
  if (s32) {
    dev = std::max(dev, std::abs(rec - *s32));
    dev = std::max(dev, std::abs(s20 - *s32));
  }

  std::ostringstream os;
  if (out.format == "csv") {
    os << "route,value_re,value_im\n";
    os << "recurrence," << fmt(rec.real()) << ',' << fmt(rec.imag()) << '\n';
    if (s32)
      os << "series_3phi2," << fmt(s32->real()) << ',' << fmt(s32->imag())
         << '\n';
    os << "series_2phi0," << fmt(s20.real()) << ',' << fmt(s20.imag()) << '\n';
    os << "max_pairwise_deviation," << fmt(dev) << ',' << fmt(0.0) << '\n';
  } else {
    nlohmann::ordered_json j;
    j["recurrence"] = {{"re", rec.real()}, {"im", rec.imag()}};
    if (s32) j["series_3phi2"] = {{"re", s32->real()}, {"im", s32->imag()}};
    j["series_2phi0"] = {{"re", s20.real()}, {"im", s20.imag()}};
    j["max_pairwise_deviation"] = dev;
    os << j.dump(2) << '\n';
  }
  return emit(os.str(), out.output);
}

int run_eval_qexp(double a_re, double a_im, double b_re, double b_im,
                  double qv, double x, const CommonOut& out) {
  const qlab::QParam q(qv);
  const auto pt = qlab::EvalPointZT::from_x(x);
  const cplx v = qlab::qexp(pt, {cplx(a_re, a_im), cplx(b_re, b_im)}, q);

  std::ostringstream os;
  if (out.format == "csv") {
    os << "value_re,value_im\n" << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
  } else {
    nlohmann::ordered_json j;
    j["value"] = {{"re", v.real()}, {"im", v.imag()}};
    os << j.dump(2) << '\n';
  }
  return emit(os.str(), out.output);
}

int run_table_wcoeff(double qv, double b_re, double b_im, int n_max, int m,
                     const CommonOut& out) {
  const qlab::QParam q(qv);
  const cplx b(b_re, b_im);

  std::ostringstream os;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  if (out.format == "csv") os << "n,m,w_re,w_im\n";
  for (int n = 0; n <= n_max; ++n) {
    const cplx w = qlab::w_coeff(n, m, b, q);
    if (out.format == "csv") {
      os << n << ',' << m << ',' << fmt(w.real()) << ',' << fmt(w.imag())
         << '\n';
    } else {
      arr.push_back({{"n", n}, {"m", m}, {"w_re", w.real()},
                     {"w_im", w.imag()}});
    }
  }
  if (out.format == "json") os << arr.dump(2) << '\n';
  return emit(os.str(), out.output);
}

int run_gram(int n_max, double a, double qv, int nodes, const CommonOut& out) {
  const qlab::QParam q(qv);
  const auto rule = qlab::chebyshev_rule(nodes);
  const auto gram = qlab::gram_matrix(n_max, a, q, rule);

  std::ostringstream os;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  if (out.format == "csv") os << "m,n,computed,expected,abs_err\n";
  for (const auto& line : gram)
    for (const auto& e : line) {
      if (out.format == "csv") {
        os << e.m << ',' << e.n << ',' << fmt(e.computed) << ','
           << fmt(e.expected) << ',' << fmt(e.abs_err) << '\n';
      } else {
        arr.push_back({{"m", e.m},
                       {"n", e.n},
                       {"computed", e.computed},
                       {"expected", e.expected},
                       {"abs_err", e.abs_err}});
      }
    }
  if (out.format == "json") os << arr.dump(2) << '\n';
  return emit(os.str(), out.output);
}

int run_verify(const std::string& suite, const qlab::SuiteOptions& opt,
               const CommonOut& out) {
  std::vector<qlab::CheckRow> rows;
  if (suite == "actions")
    rows = qlab::actions_suite(opt);
  else if (suite == "relations")
    rows = qlab::relations_suite(opt);
  else if (suite == "orthogonality")
    rows = qlab::orthogonality_suite(opt);
  else if (suite == "expansion")
    rows = qlab::expansion_suite(opt);
  else if (suite == "limits")
    rows = qlab::limits_suite(opt);
  else
    rows = qlab::all_suites(opt);

  std::ostringstream os;
  if (out.format == "csv")
    qlab::write_rows_csv(os, rows);
  else
    qlab::write_rows_json(os, rows);
  const int rc = emit(os.str(), out.output);
  if (rc != 0) return rc;

  if (!qlab::all_pass(rows)) {
    for (const auto& r : rows)
      if (!r.pass) {
        std::cerr << "FAIL: check=" << r.check << " id=" << r.id
                  << " residual=" << r.residual << " tol=" << r.tol << "\n";
        break;
      }
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlab: continuous big q-Hermite / q-oscillator identity lab"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a function at a point");
  eval->require_subcommand(1);

  int poly_n = 0;
  double poly_q = 0.5, poly_are = 0.0, poly_aim = 0.0, poly_x = 0.0;
  CommonOut poly_out;
  auto* eval_poly =
      eval->add_subcommand("poly", "Big q-Hermite value by all routes");
  eval_poly->add_option("--n", poly_n, "Degree")->required();
  eval_poly->add_option("--q", poly_q, "Deformation parameter in (0,1)")
      ->required();
  eval_poly->add_option("--a-re", poly_are, "Re(a)")->required();
  eval_poly->add_option("--a-im", poly_aim, "Im(a)");
  eval_poly->add_option("--x", poly_x, "Argument x in [-1,1]")->required();
  add_output_flags(eval_poly, poly_out);

  double qe_are = 0.0, qe_aim = 0.0, qe_bre = 0.0, qe_bim = 0.0;
  double qe_q = 0.5, qe_x = 0.0;
  CommonOut qe_out;
  auto* eval_qexp = eval->add_subcommand("qexp", "q-exponential value");
  eval_qexp->add_option("--a-re", qe_are, "Re(a)")->required();
  eval_qexp->add_option("--a-im", qe_aim, "Im(a)");
  eval_qexp->add_option("--b-re", qe_bre, "Re(b)")->required();
  eval_qexp->add_option("--b-im", qe_bim, "Im(b)");
  eval_qexp->add_option("--q", qe_q, "Deformation parameter in (0,1)")
      ->required();
  eval_qexp->add_option("--x", qe_x, "Argument x in [-1,1]")->required();
  add_output_flags(eval_qexp, qe_out);

  // table
  auto* table = app.add_subcommand("table", "Generate coefficient tables");
  table->require_subcommand(1);
  double tw_q = 0.5, tw_bre = 0.0, tw_bim = 0.0;
  int tw_nmax = 10, tw_m = 0;
  CommonOut tw_out;
  auto* table_w =
      table->add_subcommand("wcoeff", "Expansion coefficients W_n^m(b)");
  table_w->add_option("--q", tw_q, "Deformation parameter")->required();
  table_w->add_option("--b-re", tw_bre, "Re(b)")->required();
  table_w->add_option("--b-im", tw_bim, "Im(b)");
  table_w->add_option("--n-max", tw_nmax, "Largest degree n")->required();
  table_w->add_option("--m", tw_m, "Basis superscript m")->required();
  add_output_flags(table_w, tw_out);

  // verify
  std::string suite;
  qlab::SuiteOptions vopt;
  CommonOut v_out;
  double v_tol = -1.0;
  std::string corrupt;
  auto* verify = app.add_subcommand(
      "verify", "Run a verification suite; exit 0 iff every check passes");
  verify
      ->add_option("suite", suite,
                   "One of actions|relations|orthogonality|expansion|limits|all")
      ->required()
      ->check(CLI::IsMember(
          {"actions", "relations", "orthogonality", "expansion", "limits",
           "all"}));
  verify->add_option("--q", vopt.q, "Deformation parameter")
      ->capture_default_str();
  verify
      ->add_option("--tol", v_tol,
                   "Override every row tolerance (default: per-check "
                   "tolerances; QLAB_TOL overrides those too)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--a", vopt.a, "Orthogonality parameter a, |a| < 1")
      ->capture_default_str();
  verify->add_option("--n-max", vopt.n_max, "Orthogonality matrix size")
      ->capture_default_str();
  auto* v_nodes_opt =
      verify->add_option("--nodes", vopt.nodes,
                         "Quadrature nodes (default 256 up to n-max 6, "
                         "512 beyond)");
  verify->add_option(
      "--corrupt", corrupt,
      "Debug: corrupt one generator formula (A+, A-, B+, B-, K, K1/2, P, Q) "
      "to prove the suites catch it");
  add_output_flags(verify, v_out);

  // gram
  int g_nmax = 4, g_nodes = 512;
  double g_a = 0.0, g_q = 0.5;
  CommonOut g_out;
  auto* gram = app.add_subcommand("gram", "Orthogonality Gram matrix");
  gram->add_option("--n-max", g_nmax, "Largest degree")->required();
  gram->add_option("--a", g_a, "Parameter a, |a| < 1")->required();
  gram->add_option("--q", g_q, "Deformation parameter")->required();
  auto* g_nodes_opt = gram->add_option(
      "--nodes", g_nodes,
      "Quadrature nodes (default 256 up to n-max 6, 512 beyond)");
  add_output_flags(gram, g_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (eval_poly->parsed())
      return run_eval_poly(poly_n, poly_q, poly_are, poly_aim, poly_x,
                           poly_out);
    if (eval_qexp->parsed())
      return run_eval_qexp(qe_are, qe_aim, qe_bre, qe_bim, qe_q, qe_x, qe_out);
    if (table_w->parsed())
      return run_table_wcoeff(tw_q, tw_bre, tw_bim, tw_nmax, tw_m, tw_out);
    if (gram->parsed()) {
      if (g_nodes_opt->count() == 0) g_nodes = (g_nmax <= 6) ? 256 : 512;
      return run_gram(g_nmax, g_a, g_q, g_nodes, g_out);
    }
    if (verify->parsed()) {
      if (v_nodes_opt->count() == 0) vopt.nodes = (vopt.n_max <= 6) ? 256 : 512;
      if (v_tol > 0.0) {
        vopt.tol = v_tol;
      } else if (const char* env = std::getenv("QLAB_TOL")) {
        const double t = std::atof(env);
        if (t > 0.0) vopt.tol = t;
      }
      if (!corrupt.empty()) {
        const auto g = qlab::generator_from_name(corrupt);
        if (!g || *g == qlab::Generator::Id) {
          std::cerr << "error: --corrupt expects one of A+, A-, B+, B-, K, "
                       "K1/2, P, Q\n";
          return 2;
        }
        vopt.mutation.target = *g;
      }
      return run_verify(suite, vopt, v_out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
