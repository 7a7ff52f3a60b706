#include "varspec_app/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "varspec/cutoff.hpp"
#include "varspec/error.hpp"
#include "varspec/models.hpp"

#ifndef VARSPEC_DEFAULT_DATA_DIR
#define VARSPEC_DEFAULT_DATA_DIR "data"
#endif

namespace varspec::app {

namespace {

using engine::SpectrumEstimate;

engine::SolverConfig solver_config(const RunConfig& cfg) {
  engine::SolverConfig s;
  s.method = cfg.method == "m2" ? engine::Method::Method2 : engine::Method::Method1;
  s.objective = cfg.objective == "rayleigh" ? engine::Objective::RayleighForGroundState : engine::Objective::ResidualNorm;
  s.optimizer.grid_points = cfg.grid_points;
  s.optimizer.refine_starts = cfg.refine_starts;
  s.optimizer.simplex.max_evaluations = cfg.max_evaluations;
  s.quad_tol = cfg.quad_tol;
  return s;
}

std::vector<std::string> omega_columns(std::size_t k) {
  if (k == 1) return {"omega"};
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back("omega" + std::to_string(i));
  return out;
}

void push_estimate(Table& t, std::vector<std::string> lead, const SpectrumEstimate& e) {
  lead.push_back(format_number(e.energy));
  lead.push_back(format_number(e.residual));
  for (double w : e.omega) lead.push_back(format_number(w));
  t.rows.push_back(std::move(lead));
}

RunResult run_anharmonic(const RunConfig& cfg) {
  const auto h = models::anharmonic_hamiltonian();
  const auto basis = cfg.basis == "gn2" ? models::AnharmonicBasis::Gn2 : models::AnharmonicBasis::Gn;
  const auto solver = solver_config(cfg);
  struct Row {
    std::string parity;
    SpectrumEstimate est;
  };
  std::vector<Row> rows;
  auto tower = [&](models::Parity p, std::size_t levels, const char* label) {
    if (levels == 0) return;
    for (auto& e : engine::solve_tower(levels, h, models::anharmonic_family(p, basis), solver)) {
      rows.push_back({label, std::move(e)});
    }
  };
  if (cfg.sector == "both") {
    tower(models::Parity::Even, (cfg.levels + 1) / 2, "even");
    tower(models::Parity::Odd, cfg.levels / 2, "odd");
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.est.energy < b.est.energy; });
  } else if (cfg.sector == "even") {
    tower(models::Parity::Even, cfg.levels, "even");
  } else {
    tower(models::Parity::Odd, cfg.levels, "odd");
  }
  RunResult r;
  r.table.columns = {"n", "parity", "level", "E", "R"};
  for (const auto& c : omega_columns(basis == models::AnharmonicBasis::Gn ? 1 : 2)) r.table.columns.push_back(c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    push_estimate(r.table, {std::to_string(i), rows[i].parity, std::to_string(rows[i].est.level)}, rows[i].est);
  }
  return r;
}

RunResult run_x2y2(const RunConfig& cfg) {
  const auto sector = models::parse_x2y2_sector(cfg.sector);
  const auto solver = solver_config(cfg);
  const auto tower = engine::solve_tower(cfg.levels, models::x2y2_hamiltonian(), models::x2y2_family(sector, solver.method), solver);
  RunResult r;
  r.table.columns = {"state", "E", "R", "omega1", "omega2", "omega3"};
  for (const auto& e : tower) push_estimate(r.table, {cfg.sector + "_" + std::to_string(e.level)}, e);
  r.notes.emplace_back("max_relative_overlap", format_number(engine::max_relative_overlap(tower, cfg.quad_tol)));
  return r;
}

RunResult run_su2_numeric(const RunConfig& cfg) {
  const int d = cfg.d_values.front();
  const auto solver = solver_config(cfg);
  const auto tower = engine::solve_tower(cfg.levels, models::su2_hamiltonian(d, cfg.rescaled), models::su2_family(d), solver);
  RunResult r;
  r.table.columns = {"n", "E", "R", "omega"};
  for (const auto& e : tower) push_estimate(r.table, {std::to_string(e.level)}, e);
  r.notes.emplace_back("d", std::to_string(d));
  return r;
}

/// R of the level-1 state at omega1 with the level-0 state frozen at omega0, through
/// the symbolic moments.
double su2_excited_residual(int d, double omega0, double omega1, bool rescaled) {
  const auto h = models::su2_hamiltonian(d, rescaled);
  const auto fam = models::su2_family(d);
  engine::SolverConfig solver;
  solver.method = engine::Method::Method2;
  MomentCache cache;
  SpectrumEstimate ground;
  const double w0[] = {omega0};
  ground.state = fam.basis(0, w0);
  ground.h_state = apply_hamiltonian(h, ground.state);
  ground.norm_sq = inner_product(ground.state, ground.state, &cache);
  ground.omega = {omega0};
  const double w1[] = {omega1};
  const auto o = engine::orthogonalize_m2(1, w1, fam, {ground}, solver, &cache);
  return std::sqrt(variance_objective(o.state, h, &cache).r_sq);
}

RunResult run_su2_analytic(const RunConfig& cfg) {
  RunResult r;
  if (cfg.sector == "pair") {
    const int d = cfg.d_values.front();
    const double s = cfg.rescaled ? 1.0 : 1.0 / models::su2_rescale(d);
    const double g = cfg.rescaled ? models::su2_rescale(d) : 1.0;
    const auto ground = models::su2_ground_closed_form(d);
    const auto excited = models::su2_excited_closed_form(d);
    r.table.columns = {"n", "E", "R", "omega"};
    r.table.rows.push_back({"0", format_number(ground.e0 * g), format_number(std::sqrt(ground.r0_sq) * g),
                            format_number(ground.omega_min)});
    const double r1 = su2_excited_residual(d, ground.omega_min, excited.omega1_min, cfg.rescaled);
    r.table.rows.push_back({"1", format_number(excited.e1 * s), format_number(r1), format_number(excited.omega1_min)});
    r.notes.emplace_back("d", std::to_string(d));
    return r;
  }
  if (cfg.sector == "ground") {
    r.table.columns = {"d", "E0", "R0", "omega0"};
    for (int d : cfg.d_values) {
      const auto g = models::su2_ground_closed_form(d);
      const double f = cfg.rescaled ? models::su2_rescale(d) : 1.0;
      r.table.rows.push_back({std::to_string(d), format_number(g.e0 * f), format_number(std::sqrt(g.r0_sq) * f),
                              format_number(g.omega_min)});
    }
  } else {
    r.table.columns = {"d", "E1", "omega1"};
    for (int d : cfg.d_values) {
      const auto e = models::su2_excited_closed_form(d);
      const double f = cfg.rescaled ? 1.0 : 1.0 / models::su2_rescale(d);
      r.table.rows.push_back({std::to_string(d), format_number(e.e1 * f), format_number(e.omega1_min)});
    }
  }
  r.notes.emplace_back("rescaled", cfg.rescaled ? "true" : "false");
  return r;
}

RunResult run_cutoff(const RunConfig& cfg) {
  cutoff::ConvergenceScan scan;
  RunResult r;
  if (cfg.sign_convention == "auto") {
    std::string rejected;
    scan = cutoff::convergence_scan_auto(cfg.cutoffs, cfg.eigenvalues, &rejected);
    r.notes.emplace_back("sign_convention_rejected", rejected);
  } else {
    scan = cutoff::convergence_scan(cfg.cutoffs, cfg.eigenvalues, cutoff::parse_sign_convention(cfg.sign_convention));
  }
  r.notes.emplace_back("sign_convention", cutoff::to_string(scan.sign));
  if (cfg.layout == "final") {
    r.table.columns = {"n", "E"};
    const auto& last = scan.rows.back();
    for (std::size_t j = 0; j < last.eigenvalues.size(); ++j) {
      r.table.rows.push_back({std::to_string(j), format_number(last.eigenvalues[j])});
    }
    r.notes.emplace_back("cutoff", std::to_string(last.cutoff));
    return r;
  }
  r.table.columns = {"N"};
  for (std::size_t j = 0; j < cfg.eigenvalues; ++j) r.table.columns.push_back("E" + std::to_string(j));
  for (const auto& row : scan.rows) {
    std::vector<std::string> cells{std::to_string(row.cutoff)};
    for (double e : row.eigenvalues) cells.push_back(format_number(e));
    r.table.rows.push_back(std::move(cells));
  }
  return r;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  RunResult r;
  switch (cfg.model) {
    case ModelId::Anharmonic: r = run_anharmonic(cfg); break;
    case ModelId::X2Y2: r = run_x2y2(cfg); break;
    case ModelId::SU2Numeric: r = run_su2_numeric(cfg); break;
    case ModelId::SU2Analytic: r = run_su2_analytic(cfg); break;
    case ModelId::Cutoff: r = run_cutoff(cfg); break;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string run_to_files(const RunConfig& cfg, RunResult* result) {
  RunResult r = run(cfg);
  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);
  const auto out_path = dir / (cfg.name + (cfg.format == OutputFormat::Csv ? ".csv" : ".md"));
  {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot write '" + out_path.string() + "'");
    if (cfg.format == OutputFormat::Csv) {
      write_csv(out, r.table);
    } else {
      write_markdown(out, r.table);
    }
    if (!out) throw Error("write failed for '" + out_path.string() + "'");
  }
  const auto meta_path = dir / (cfg.name + ".meta.txt");
  std::ofstream meta(meta_path, std::ios::binary);
  if (!meta) throw Error("cannot write '" + meta_path.string() + "'");
  meta << "# configuration\n" << to_text(cfg) << "# run\n";
  for (const auto& [k, v] : r.notes) meta << k << "=" << v << "\n";
  meta << "wall_seconds=" << format_number(r.seconds) << "\n";
  meta << "within_budget=" << (r.seconds <= cfg.budget_seconds ? "true" : "false") << "\n";
  if (!meta) throw Error("write failed for '" + meta_path.string() + "'");
  if (result != nullptr) *result = std::move(r);
  return out_path.string();
}

std::vector<std::pair<std::string, Tolerance>> read_tolerances(const std::string& path) {
  const Table t = read_csv_file(path);
  const auto ci = t.column_index("column"), ai = t.column_index("abs"), ri = t.column_index("rel");
  if (ci == std::string::npos || ai == std::string::npos || ri == std::string::npos) {
    throw DomainError("tolerance table '" + path + "' needs columns column,abs,rel");
  }
  std::vector<std::pair<std::string, Tolerance>> out;
  for (const auto& row : t.rows) {
    const auto a = parse_number(row[ai]), rel = parse_number(row[ri]);
    if (!a || !rel) throw DomainError("tolerance table '" + path + "': bad numbers for column " + row[ci]);
    out.emplace_back(row[ci], Tolerance{*a, *rel});
  }
  return out;
}

CompareReport compare(const Table& result, const Table& reference,
                      const std::vector<std::pair<std::string, Tolerance>>& tolerances) {
  if (result.columns.empty() || reference.columns.empty() || result.columns[0] != reference.columns[0]) {
    throw DomainError("compare: key columns differ");
  }
  CompareReport report;
  for (const auto& [column, tol] : tolerances) {
    const auto ri = result.column_index(column), fi = reference.column_index(column);
    if (ri == std::string::npos || fi == std::string::npos) {
      throw DomainError("compare: column '" + column + "' missing from " + (ri == std::string::npos ? "result" : "reference"));
    }
    for (const auto& ref_row : reference.rows) {
      const auto ref_value = parse_number(ref_row[fi]);
      if (!ref_value) continue;
      const auto* row = result.find_row(ref_row[0]);
      if (row == nullptr) throw DomainError("compare: row '" + ref_row[0] + "' missing from result");
      const auto value = parse_number((*row)[ri]);
      if (!value) throw DomainError("compare: non-numeric result cell at row '" + ref_row[0] + "', column " + column);
      const double dev = std::abs(*value - *ref_value);
      const bool pass = dev <= std::max(tol.abs, tol.rel * std::abs(*ref_value));
      report.cells.push_back({ref_row[0], column, *value, *ref_value, dev, pass});
      report.max_deviation = std::max(report.max_deviation, dev);
      report.pass = report.pass && pass;
    }
  }
  return report;
}

std::string data_dir() {
  if (const char* env = std::getenv("VARSPEC_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return VARSPEC_DEFAULT_DATA_DIR;
}

}  // namespace varspec::app
