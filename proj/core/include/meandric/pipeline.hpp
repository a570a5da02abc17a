#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "meandric/irreducible.hpp"
#include "meandric/series.hpp"

namespace meandric {

/// One line of a PASS/FAIL diagnostics report.
struct StageCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct CheckReport {
  std::vector<StageCheck> checks;
  /// Informational lines, never asserted.
  std::vector<std::string> notes;

  bool passed() const;
  void add(std::string name, bool passed, std::string detail = {});
};

/// The multiplier of 1/sqrt(pi) in M_n^{(n-r)} ~ c 4^n n^{(2r-3)/2}.
struct AsymptoticConstant {
  bool defined = false;  // false when P_r(1) = 0
  mpq_class exact;
  double value = 0.0;  // exact / sqrt(pi)
};

/// P_r(1) / (2^{r-1} (2r-3)!!), with (-1)!! = 1.
AsymptoticConstant asymptotic_constant(int r, const IntPolynomial& poly);

struct PipelineResult {
  int r_max = 0;
  SeriesBounds bounds;
  /// r -> P_r(w), for 1 <= r <= r_max.
  std::map<int, IntPolynomial> polys;
  /// r -> (M_1^{(1-r)}, ..., M_nx^{(nx-r)}), index n - 1.
  std::map<int, std::vector<mpz_class>> f_series;
  std::map<int, AsymptoticConstant> asympt;
  CheckReport diagnostics;
  /// Intermediate series, kept for inspection.
  TruncSeries i_series;
  TruncSeries k_series;
  TruncSeries m_series;
};

/// Default X truncation for a target r_max.
inline int default_nx(int r_max) { return 4 * r_max + 4; }
/// Default A/B truncation: compatible triples never exceed max(2r-2, 1).
inline int default_nab(int r_max) { return std::max(2 * r_max - 2, 1); }

/// I -> K -> M -> F_r -> P_r with every structural check recorded in
/// diagnostics. Throws StructureViolation (carrying the failed lines) when a
/// hard check fails; nx = 0 selects default_nx(r_max).
PipelineResult run_pipeline(const IrreducibleTable& table, int r_max,
                            int nx = 0);

/// Builds (or loads) the irreducible table, then runs the pipeline.
PipelineResult run_pipeline(int r_max, int nx = 0,
                            const TableOptions& table_options = {});

/// Compares I/K/M series coefficients and F_r against exhaustive counts over
/// NC(n)^2 for every n <= n_max (n_max <= 8).
CheckReport verify_against_brute(int n_max, int workers = 1);

/// 1 + M(X) = (1 + I)(X (1 + M(X))^2) at Y = A = B = 1, solved directly and
/// compared with the two-step transform and with Cat_n^2, up to X^n_max.
CheckReport lando_zvonkin_check(int n_max,
                                const TableOptions& table_options = {});

/// Stable-order JSON bundle of a pipeline result.
void write_result_json(std::ostream& out, const PipelineResult& result);
/// "PASS name: detail" / "FAIL name: detail" lines, then "NOTE ..." lines.
void write_report(std::ostream& out, const CheckReport& report);

}  // namespace meandric
