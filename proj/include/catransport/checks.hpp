#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catransport/bundle_connection.hpp"

namespace catransport {

/// One line of a machine-readable residual report.
struct ReportRow {
  std::string check;
  std::string scenario;
  int N = 0;
  int M = 0;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
};

/// Stable list of check identifiers usable with `run --checks`.
std::vector<std::string> check_names();

/// Run one named check on a scenario at grid (N, M) with a seed. Unknown
/// names raise ConfigError. A check may emit several rows.
std::vector<ReportRow> run_check(const std::string& name, const Scenario& sc, int N,
                                 int M, std::uint64_t seed);

/// Run a comma-separated selection ("all" for every check), rows sorted.
std::vector<ReportRow> run_checks(const std::vector<std::string>& names,
                                  const Scenario& sc, int N, int M, std::uint64_t seed);

void sort_rows(std::vector<ReportRow>& rows);
std::string report_to_csv(const std::vector<ReportRow>& rows);
void write_report_csv(const std::string& file, const std::vector<ReportRow>& rows);

/// Convergence studies for grid-refinable checks.
struct ConvergenceRow {
  std::string check;
  double h = 0;
  double residual = 0;
  std::string order;  // "-", "exact" or a fitted exponent
};

std::vector<std::string> convergence_check_names();
std::vector<ConvergenceRow> convergence_study(const std::string& name, const Scenario& sc,
                                              const std::vector<std::pair<int, int>>& grids,
                                              std::uint64_t seed);
std::string convergence_to_csv(const std::vector<ConvergenceRow>& rows);

/// Observed order from a ladder of (h, residual) pairs (log-log slope).
double fitted_order(const std::vector<ConvergenceRow>& rows);

}  // namespace catransport
