#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace varspec::app {

enum class ModelId { Anharmonic, X2Y2, SU2Numeric, SU2Analytic, Cutoff };
enum class OutputFormat { Csv, Markdown };

struct RunConfig {
  std::string name = "run";
  ModelId model = ModelId::Anharmonic;
  /// anharmonic: even, odd or both; x2y2: EEE or EEO; su2 analytic: ground, excited or pair.
  std::string sector = "both";
  std::string method = "m1";
  std::string basis = "gn";
  std::string objective = "residual";
  std::size_t levels = 1;
  int grid_points = 5;
  int refine_starts = 3;
  int max_evaluations = 2000;
  double quad_tol = 1e-10;
  std::vector<int> d_values{2};
  bool rescaled = false;
  std::vector<std::size_t> cutoffs;
  std::size_t eigenvalues = 5;
  std::string sign_convention = "as_written";
  /// cutoff output: "scan" (one row per cut-off) or "final" (one row per eigenvalue at
  /// the largest cut-off).
  std::string layout = "scan";
  OutputFormat format = OutputFormat::Csv;
  std::string output_dir = ".";
  double budget_seconds = 600;
};

/// Flat key=value text, one key per line, '#' comments. Unknown keys and invalid
/// values throw varspec::DomainError naming the key.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
/// key=value echo, parseable by parse_config.
std::string to_text(const RunConfig& cfg);

std::vector<std::string> preset_names();
RunConfig preset(const std::string& name);

/// Throws DomainError when the model/sector/method/basis combination does not exist.
void validate(const RunConfig& cfg);

}  // namespace varspec::app
