#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lightsim/study.hpp"

namespace lightsim {

/// Fixed-decimal formatting used in every emitted table; "-0.00" becomes "0.00".
std::string format_fixed(double value, int decimals);
/// Empty string for an undefined metric.
std::string format_optional(const std::optional<double>& value, int decimals);

/// Column order of the per-scenario results table.
const std::vector<std::string>& results_columns();

/// One CSV row per (location, scenario): identifiers followed by the
/// results_columns() metrics. Undefined metrics are left empty.
void write_results_csv(std::ostream& out, const StudyResult& study);

/// JSON mirror of the CSV: same rows, same rounded values, null for undefined.
void write_results_json(std::ostream& out, const StudyResult& study);

/// The seven per-figure tables (energy, cost, payback, NPV, IRR, emissions,
/// ADI), each with one row per location and scenario. Returns the file names.
std::vector<std::string> write_figure_tables(const std::filesystem::path& dir, const StudyResult& study);

struct CheckResult {
  std::string id;
  std::string description;
  std::string computed;
  std::string target;
  bool pass = false;
};

void write_checks_csv(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace lightsim
