#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qlab/opalg.hpp"

namespace qlab {

/// One verification result, in the canonical report schema
///   check,relation_id,n,m,q,residual,tol,status
struct CheckRow {
  std::string check;
  std::string id;
  std::optional<int> n;
  std::optional<int> m;
  double q;
  double residual;
  double tol;
  bool pass;
};

/// Shared knobs for the verification suites. When tol is set it replaces the
/// per-row defaults (which match the acceptance tolerances); mutation is the
/// debug corruption knob.
struct SuiteOptions {
  double q = 0.5;
  std::optional<double> tol;
  GeneratorMutation mutation{std::nullopt, 1.0 + 1e-3};

  // orthogonality-specific
  double a = 0.4;
  int n_max = 4;
  int nodes = 512;
};

/// Generator actions on the basis functions, n <= 6, m in [-3, 3].
std::vector<CheckRow> actions_suite(const SuiteOptions& opt);

/// The 20 defining relations over the same index sweep.
std::vector<CheckRow> relations_suite(const SuiteOptions& opt);

/// Quadrature check of the orthogonality relation (Gram matrix entries).
std::vector<CheckRow> orthogonality_suite(const SuiteOptions& opt);

/// q-exponential machinery: eigenrelation, g/y recurrences, coefficient
/// recurrences, and both expansion formulas.
std::vector<CheckRow> expansion_suite(const SuiteOptions& opt);

/// q -> 1^- limits along q = 0.9, 0.99, 0.999: rows must be decreasing
/// (each row's tol is the previous residual in its sequence).
std::vector<CheckRow> limits_suite(const SuiteOptions& opt);

/// All of the above, concatenated in canonical order.
std::vector<CheckRow> all_suites(const SuiteOptions& opt);

bool all_pass(const std::vector<CheckRow>& rows);

void write_rows_csv(std::ostream& os, const std::vector<CheckRow>& rows);
void write_rows_json(std::ostream& os, const std::vector<CheckRow>& rows);

}  // namespace qlab
