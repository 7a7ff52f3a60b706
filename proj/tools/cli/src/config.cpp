#include "varspec_app/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "varspec/error.hpp"
#include "varspec/models.hpp"
#include "varspec_app/table.hpp"

namespace varspec::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double number(const std::string& key, const std::string& value) {
  const auto v = parse_number(value);
  if (!v) throw DomainError("config: key '" + key + "' expects a number, got '" + value + "'");
  return *v;
}

long integer(const std::string& key, const std::string& value, long min) {
  const double v = number(key, value);
  if (v != static_cast<double>(static_cast<long>(v)) || v < static_cast<double>(min)) {
    throw DomainError("config: key '" + key + "' expects an integer >= " + std::to_string(min) + ", got '" + value + "'");
  }
  return static_cast<long>(v);
}

template <class T>
std::vector<T> integer_list(const std::string& key, const std::string& value, long min) {
  std::vector<T> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<T>(integer(key, trim(item), min)));
  if (out.empty()) throw DomainError("config: key '" + key + "' expects a non-empty list");
  return out;
}

const std::map<std::string, ModelId>& model_names() {
  static const std::map<std::string, ModelId> names{{"anharmonic", ModelId::Anharmonic},
                                                    {"x2y2", ModelId::X2Y2},
                                                    {"su2", ModelId::SU2Numeric},
                                                    {"su2_analytic", ModelId::SU2Analytic},
                                                    {"cutoff", ModelId::Cutoff}};
  return names;
}

std::string model_name(ModelId m) {
  for (const auto& [k, v] : model_names()) {
    if (v == m) return k;
  }
  return "?";
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

void set_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "name") {
    if (value.empty() || value.find_first_of("/\\") != std::string::npos) {
      throw DomainError("config: invalid name '" + value + "'");
    }
    cfg.name = value;
  } else if (key == "model") {
    const auto it = model_names().find(value);
    if (it == model_names().end()) throw DomainError("config: unknown model '" + value + "'");
    cfg.model = it->second;
  } else if (key == "sector") {
    cfg.sector = value;
  } else if (key == "method") {
    cfg.method = value;
  } else if (key == "basis") {
    cfg.basis = value;
  } else if (key == "objective") {
    cfg.objective = value;
  } else if (key == "levels") {
    cfg.levels = static_cast<std::size_t>(integer(key, value, 1));
  } else if (key == "grid_points") {
    cfg.grid_points = static_cast<int>(integer(key, value, 1));
  } else if (key == "refine_starts") {
    cfg.refine_starts = static_cast<int>(integer(key, value, 1));
  } else if (key == "max_evaluations") {
    cfg.max_evaluations = static_cast<int>(integer(key, value, 10));
  } else if (key == "quad_tol") {
    cfg.quad_tol = number(key, value);
    if (!(cfg.quad_tol > 0)) throw DomainError("config: quad_tol must be positive");
  } else if (key == "d") {
    cfg.d_values = integer_list<int>(key, value, 1);
  } else if (key == "rescaled") {
    if (value != "true" && value != "false") throw DomainError("config: rescaled expects true or false");
    cfg.rescaled = value == "true";
  } else if (key == "cutoffs") {
    cfg.cutoffs = integer_list<std::size_t>(key, value, 0);
  } else if (key == "eigenvalues") {
    cfg.eigenvalues = static_cast<std::size_t>(integer(key, value, 1));
  } else if (key == "sign_convention") {
    cfg.sign_convention = value;
  } else if (key == "layout") {
    if (value != "scan" && value != "final") throw DomainError("config: layout expects scan or final");
    cfg.layout = value;
  } else if (key == "format") {
    if (value == "csv") {
      cfg.format = OutputFormat::Csv;
    } else if (value == "markdown") {
      cfg.format = OutputFormat::Markdown;
    } else {
      throw DomainError("config: unknown format '" + value + "'");
    }
  } else if (key == "output") {
    cfg.output_dir = value;
  } else if (key == "budget_seconds") {
    cfg.budget_seconds = number(key, value);
  } else {
    throw DomainError("config: unknown key '" + key + "'");
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    set_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_text(const RunConfig& cfg) {
  std::ostringstream os;
  os << "name=" << cfg.name << "\n"
     << "model=" << model_name(cfg.model) << "\n"
     << "sector=" << cfg.sector << "\n"
     << "method=" << cfg.method << "\n"
     << "basis=" << cfg.basis << "\n"
     << "objective=" << cfg.objective << "\n"
     << "levels=" << cfg.levels << "\n"
     << "grid_points=" << cfg.grid_points << "\n"
     << "refine_starts=" << cfg.refine_starts << "\n"
     << "max_evaluations=" << cfg.max_evaluations << "\n"
     << "quad_tol=" << format_number(cfg.quad_tol) << "\n"
     << "d=" << join(cfg.d_values) << "\n"
     << "rescaled=" << (cfg.rescaled ? "true" : "false") << "\n";
  if (!cfg.cutoffs.empty()) os << "cutoffs=" << join(cfg.cutoffs) << "\n";
  os << "eigenvalues=" << cfg.eigenvalues << "\n"
     << "sign_convention=" << cfg.sign_convention << "\n"
     << "layout=" << cfg.layout << "\n"
     << "format=" << (cfg.format == OutputFormat::Csv ? "csv" : "markdown") << "\n"
     << "output=" << cfg.output_dir << "\n"
     << "budget_seconds=" << format_number(cfg.budget_seconds) << "\n";
  return os.str();
}

void validate(const RunConfig& cfg) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw DomainError("config: " + what);
  };
  const bool m1 = cfg.method == "m1", m2 = cfg.method == "m2";
  switch (cfg.model) {
    case ModelId::Anharmonic:
      require(cfg.sector == "even" || cfg.sector == "odd" || cfg.sector == "both",
              "unknown sector '" + cfg.sector + "' for anharmonic (even, odd, both)");
      require(m1 || m2, "unknown method '" + cfg.method + "' (m1, m2)");
      require(cfg.basis == "gn" || cfg.basis == "gn2", "unknown basis '" + cfg.basis + "' (gn, gn2)");
      require(cfg.objective == "residual" || cfg.objective == "rayleigh", "unknown objective '" + cfg.objective + "'");
      break;
    case ModelId::X2Y2: {
      const auto sector = models::parse_x2y2_sector(cfg.sector);
      require(sector == models::X2Y2Sector::EEE || sector == models::X2Y2Sector::EEO,
              "sector '" + cfg.sector + "' has no ansatz (EEE, EEO)");
      require(m1 || m2, "unknown method '" + cfg.method + "' (m1, m2)");
      require(cfg.objective == "residual" || cfg.objective == "rayleigh", "unknown objective '" + cfg.objective + "'");
      break;
    }
    case ModelId::SU2Numeric:
      require(cfg.d_values.size() == 1 && cfg.d_values[0] >= 2, "su2 needs a single d >= 2");
      require(cfg.levels <= 2, "su2 family has at most 2 levels");
      require(m1 || m2, "unknown method '" + cfg.method + "' (m1, m2)");
      require(cfg.objective == "residual" || cfg.objective == "rayleigh", "unknown objective '" + cfg.objective + "'");
      break;
    case ModelId::SU2Analytic:
      require(cfg.sector == "ground" || cfg.sector == "excited" || cfg.sector == "pair",
              "unknown sector '" + cfg.sector + "' for su2_analytic (ground, excited, pair)");
      for (int d : cfg.d_values) require(d >= 2, "su2_analytic needs d >= 2");
      break;
    case ModelId::Cutoff:
      require(!cfg.cutoffs.empty(), "cutoff model needs a cutoffs list");
      require(std::is_sorted(cfg.cutoffs.begin(), cfg.cutoffs.end()) &&
                  std::adjacent_find(cfg.cutoffs.begin(), cfg.cutoffs.end()) == cfg.cutoffs.end(),
              "cutoffs must be strictly ascending");
      require(cfg.cutoffs.front() + 1 >= cfg.eigenvalues, "smallest cut-off has fewer states than eigenvalues");
      require(cfg.sign_convention == "auto" || cfg.sign_convention == "as_written" || cfg.sign_convention == "repulsive",
              "unknown sign_convention '" + cfg.sign_convention + "'");
      require(cfg.sign_convention != "auto" || cfg.cutoffs.size() >= 2, "sign_convention=auto needs two cut-offs");
      break;
  }
}

std::vector<std::string> preset_names() {
  return {"table1", "table2", "table3", "table4", "table5",  "table6", "table7",
          "table8", "table9", "table10", "table11", "table12", "figure1"};
}

RunConfig preset(const std::string& name) {
  RunConfig c;
  c.name = name;
  auto anharmonic = [&](const char* method, const char* basis, std::size_t levels, double budget) {
    c.model = ModelId::Anharmonic;
    c.sector = "both";
    c.method = method;
    c.basis = basis;
    c.levels = levels;
    c.budget_seconds = budget;
  };
  auto x2y2 = [&](const char* sector, const char* method) {
    c.model = ModelId::X2Y2;
    c.sector = sector;
    c.method = method;
    c.levels = 3;
    c.budget_seconds = 300;
  };
  if (name == "table1") {
    anharmonic("m1", "gn", 11, 60);
  } else if (name == "table2") {
    anharmonic("m2", "gn", 11, 60);
  } else if (name == "table3") {
    anharmonic("m1", "gn2", 6, 300);
  } else if (name == "table4") {
    anharmonic("m2", "gn2", 10, 300);
  } else if (name == "table5") {
    x2y2("EEE", "m1");
  } else if (name == "table6") {
    x2y2("EEE", "m2");
  } else if (name == "table7") {
    x2y2("EEO", "m2");
  } else if (name == "table8") {
    c.model = ModelId::SU2Numeric;
    c.method = "m2";
    c.levels = 2;
    c.d_values = {2};
    c.budget_seconds = 60;
  } else if (name == "table9") {
    c.model = ModelId::Cutoff;
    c.cutoffs = {400, 500};
    c.layout = "final";
    c.eigenvalues = 5;
    c.sign_convention = "auto";
    c.budget_seconds = 300;
  } else if (name == "table10") {
    c.model = ModelId::SU2Analytic;
    c.sector = "pair";
    c.d_values = {2};
    c.budget_seconds = 60;
  } else if (name == "table11" || name == "table12") {
    c.model = ModelId::SU2Analytic;
    c.sector = name == "table11" ? "ground" : "excited";
    c.d_values = {2, 3, 4, 10, 100, 300};
    c.rescaled = true;
    c.budget_seconds = 60;
  } else if (name == "figure1") {
    c.model = ModelId::Cutoff;
    for (std::size_t n = 10; n <= 200; n += 10) c.cutoffs.push_back(n);
    c.sign_convention = "auto";
    c.eigenvalues = 5;
    c.budget_seconds = 300;
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw DomainError("unknown preset '" + name + "' (known: " + known + ")");
  }
  validate(c);
  return c;
}

}  // namespace varspec::app
