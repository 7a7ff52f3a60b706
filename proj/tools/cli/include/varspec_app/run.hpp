#pragma once

#include <string>
#include <utility>
#include <vector>

#include "varspec_app/config.hpp"
#include "varspec_app/table.hpp"

namespace varspec::app {

struct RunResult {
  Table table;
  /// Extra metadata lines (key, value) such as the chosen sign convention.
  std::vector<std::pair<std::string, std::string>> notes;
  double seconds = 0.0;
};

RunResult run(const RunConfig& cfg);

/// Runs and writes <name>.csv (or .md) and <name>.meta.txt into cfg.output_dir.
/// Returns the path of the result file.
std::string run_to_files(const RunConfig& cfg, RunResult* result = nullptr);

struct Tolerance {
  double abs = 0.0;
  double rel = 0.0;
};

struct CellReport {
  std::string key;
  std::string column;
  double result;
  double reference;
  double deviation;
  bool pass;
};

struct CompareReport {
  std::vector<CellReport> cells;
  double max_deviation = 0.0;
  bool pass = true;
};

/// Reads `column,abs,rel` lines. A cell passes when |result - reference| is at most
/// max(abs, rel * |reference|).
std::vector<std::pair<std::string, Tolerance>> read_tolerances(const std::string& path);

/// Compares every reference cell whose column has a tolerance. Missing rows or columns
/// in the result throw DomainError (schema mismatch).
CompareReport compare(const Table& result, const Table& reference,
                      const std::vector<std::pair<std::string, Tolerance>>& tolerances);

/// Directory holding reference/ and tolerances/: VARSPEC_DATA_DIR if set, else the
/// build-time default.
std::string data_dir();

}  // namespace varspec::app
