#include <CLI11.hpp>

#include <iostream>

#include "varspec/error.hpp"
#include "varspec_app/config.hpp"
#include "varspec_app/run.hpp"

int main(int argc, char** argv) {
  using namespace varspec::app;
  CLI::App app{"Variational spectra of polynomial Hamiltonians"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a preset or a configuration file");
  std::string preset_name, config_path, out_dir;
  auto* preset_opt = run_cmd->add_option("--preset", preset_name, "Named preset (table1..table12, figure1)");
  auto* config_opt = run_cmd->add_option("--config", config_path, "key=value configuration file");
  preset_opt->excludes(config_opt);
  run_cmd->add_option("--out", out_dir, "Output directory (overrides the configuration)");
  bool markdown = false;
  run_cmd->add_flag("--markdown", markdown, "Write the table as markdown instead of CSV");

  auto* list_cmd = app.add_subcommand("presets", "List preset names");

  auto* cmp_cmd = app.add_subcommand("compare", "Compare a result table with a reference");
  std::string result_path, reference_path, tol_path;
  cmp_cmd->add_option("--result", result_path, "Result CSV")->required();
  cmp_cmd->add_option("--reference", reference_path, "Reference CSV")->required();
  cmp_cmd->add_option("--tol-table", tol_path, "Tolerance CSV with columns column,abs,rel")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list_cmd) {
      for (const auto& n : preset_names()) std::cout << n << "\n";
      return 0;
    }
    if (*run_cmd) {
      if (preset_name.empty() && config_path.empty()) {
        std::cerr << "run: give --preset or --config\n";
        return 2;
      }
      RunConfig cfg = preset_name.empty() ? load_config(config_path) : preset(preset_name);
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      if (markdown) cfg.format = OutputFormat::Markdown;
      RunResult result;
      const std::string path = run_to_files(cfg, &result);
      std::cout << "wrote " << path << " (" << result.table.rows.size() << " rows, " << format_number(result.seconds)
                << " s)\n";
      return 0;
    }
    const auto report = compare(read_csv_file(result_path), read_csv_file(reference_path), read_tolerances(tol_path));
    for (const auto& c : report.cells) {
      if (!c.pass) {
        std::cout << "FAIL row " << c.key << " column " << c.column << ": result " << format_number(c.result)
                  << " reference " << format_number(c.reference) << " deviation " << format_number(c.deviation) << "\n";
      }
    }
    std::cout << (report.pass ? "PASS" : "FAIL") << " cells=" << report.cells.size()
              << " max_deviation=" << format_number(report.max_deviation) << "\n";
    return report.pass ? 0 : 1;
  } catch (const varspec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
