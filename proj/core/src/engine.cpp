#include "varspec/engine.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "varspec/parallel.hpp"

namespace varspec::engine {

namespace {

std::string format_omega(std::span<const double> omega) {
  std::ostringstream os;
  os.precision(10);
  os << "(";
  for (std::size_t i = 0; i < omega.size(); ++i) os << (i ? ", " : "") << omega[i];
  os << ")";
  return os.str();
}

double max_overlap_against(const WaveFunction& psi, const std::vector<SpectrumEstimate>& frozen, MomentCache& cache) {
  const double norm = std::sqrt(inner_product(psi, psi, &cache));
  double worst = 0.0;
  for (const auto& f : frozen) {
    const double o = std::abs(inner_product(f.state, psi, &cache)) / (std::sqrt(f.norm_sq) * norm);
    worst = std::max(worst, o);
  }
  return worst;
}

void check_frozen(std::size_t n, const std::vector<SpectrumEstimate>& frozen) {
  if (frozen.size() != n) {
    throw DomainError("orthogonalize: level " + std::to_string(n) + " needs " + std::to_string(n) +
                      " frozen states, got " + std::to_string(frozen.size()));
  }
}

}  // namespace

Orthogonalized orthogonalize_m1(std::size_t n, std::span<const double> omega, const AnsatzFamily& family,
                                const std::vector<SpectrumEstimate>& frozen, const SolverConfig& cfg,
                                MomentCache* cache) {
  check_frozen(n, frozen);
  MomentCache local(nullptr, cfg.quad_tol);
  MomentCache& mc = cache != nullptr ? *cache : local;

  std::vector<WaveFunction> basis;
  basis.reserve(n + 1);
  for (std::size_t l = 0; l <= n; ++l) basis.push_back(family.basis(l, omega));
  if (n == 0) return Orthogonalized{basis[0], {}, 0.0};

  // <psi_j, sum_l c_l f_l + f_n> = 0 for j < n, rows and columns scaled to unit norm so
  // the condition estimate measures linear dependence rather than moment growth.
  Eigen::MatrixXd gram(n, n);
  Eigen::VectorXd rhs(n);
  std::vector<double> basis_norm(n + 1);
  for (std::size_t l = 0; l <= n; ++l) basis_norm[l] = std::sqrt(inner_product(basis[l], basis[l], &mc));
  for (std::size_t j = 0; j < n; ++j) {
    const double fj = std::sqrt(frozen[j].norm_sq);
    for (std::size_t l = 0; l < n; ++l) {
      gram(j, l) = inner_product(frozen[j].state, basis[l], &mc) / (fj * basis_norm[l]);
    }
    rhs(j) = -inner_product(frozen[j].state, basis[n], &mc) / (fj * basis_norm[n]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || !(smax / smin <= cfg.condition_limit)) {
    throw DegenerateBasisError("orthogonalize_m1: Gram system singular at omega " + format_omega(omega));
  }
  const Eigen::VectorXd scaled = svd.solve(rhs);

  Orthogonalized out;
  out.coeffs.resize(n);
  WaveFunction psi = basis[n];
  for (std::size_t l = 0; l < n; ++l) {
    out.coeffs[l] = scaled(l) * basis_norm[n] / basis_norm[l];
    psi += out.coeffs[l] * basis[l];
  }
  out.state = std::move(psi);
  out.max_overlap = max_overlap_against(out.state, frozen, mc);
  if (!(out.max_overlap < cfg.orthogonality_tol)) {
    throw DegenerateBasisError("orthogonalize_m1: orthogonality residual " + std::to_string(out.max_overlap) +
                               " at omega " + format_omega(omega));
  }
  return out;
}

Orthogonalized orthogonalize_m2(std::size_t n, std::span<const double> omega, const AnsatzFamily& family,
                                const std::vector<SpectrumEstimate>& frozen, const SolverConfig& cfg,
                                MomentCache* cache) {
  check_frozen(n, frozen);
  MomentCache local(nullptr, cfg.quad_tol);
  MomentCache& mc = cache != nullptr ? *cache : local;

  const WaveFunction f = family.basis(n, omega);
  Orthogonalized out;
  out.state = f;
  out.coeffs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(frozen[i].norm_sq > 0.0)) throw SolverError("orthogonalize_m2: frozen state has zero norm");
    out.coeffs[i] = -inner_product(f, frozen[i].state, &mc) / frozen[i].norm_sq;
    out.state += out.coeffs[i] * frozen[i].state;
  }
  if (n > 0) {
    out.max_overlap = max_overlap_against(out.state, frozen, mc);
    if (!(out.max_overlap < cfg.orthogonality_tol)) {
      throw SolverError("orthogonalize_m2: orthogonality residual " + std::to_string(out.max_overlap) +
                        " at omega " + format_omega(omega));
    }
  }
  return out;
}

namespace {

struct Candidate {
  Orthogonalized ortho;
  WaveFunction h_state;
  VarianceResult variance;
};

Candidate evaluate(std::size_t n, std::span<const double> omega, const HamiltonianSpec& h,
                   const AnsatzFamily& family, const std::vector<SpectrumEstimate>& frozen,
                   const SolverConfig& cfg, MomentCache& cache) {
  Candidate c;
  if (cfg.method == Method::Method1) {
    c.ortho = orthogonalize_m1(n, omega, family, frozen, cfg, &cache);
    c.h_state = apply_hamiltonian(h, c.ortho.state);
  } else {
    c.ortho = orthogonalize_m2(n, omega, family, frozen, cfg, &cache);
    // H psi_n = H f_n + sum_i c_i H psi_i, reusing the frozen images.
    c.h_state = apply_hamiltonian(h, family.basis(n, omega));
    for (std::size_t i = 0; i < n; ++i) c.h_state += c.ortho.coeffs[i] * frozen[i].h_state;
  }
  c.variance = variance_objective(c.ortho.state, c.h_state, &cache);
  return c;
}

double objective_value(const VarianceResult& v, std::size_t n, const SolverConfig& cfg) {
  if (cfg.objective == Objective::RayleighForGroundState && n == 0) return v.energy;
  return v.r_sq;
}

struct StartResult {
  std::vector<double> omega;
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = 0;
};

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

// Lower value first; values equal within the objective tolerance fall back to the
// smaller parameter norm, then to the start index.
bool better(const StartResult& a, const StartResult& b, double tol) {
  if (std::isfinite(a.value) && std::isfinite(b.value)) {
    const double scale = std::max(std::abs(a.value), std::abs(b.value));
    if (std::abs(a.value - b.value) > tol * scale) return a.value < b.value;
    const double na = norm2(a.omega), nb = norm2(b.omega);
    if (na != nb) return na < nb;
    return a.index < b.index;
  }
  if (std::isfinite(a.value) != std::isfinite(b.value)) return std::isfinite(a.value);
  return a.index < b.index;
}

}  // namespace

SpectrumEstimate solve_level(std::size_t n, const HamiltonianSpec& h, const AnsatzFamily& family,
                             const std::vector<SpectrumEstimate>& frozen, const SolverConfig& cfg) {
  check_frozen(n, frozen);
  const std::size_t k = family.param_count;
  if (family.box.size() != k) throw DomainError("solve_level: parameter box has wrong size");

  // Frozen-frozen moment tables are shared read-only by every candidate evaluation.
  MomentCache frozen_cache(nullptr, cfg.quad_tol);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) inner_product(frozen[i].h_state, frozen[j].h_state, &frozen_cache);
  }

  std::vector<double> lo(k), hi(k);
  for (std::size_t p = 0; p < k; ++p) {
    lo[p] = std::log(family.box[p].lo);
    hi[p] = std::log(family.box[p].hi);
  }
  auto to_omega = [&](std::span<const double> u) {
    std::vector<double> w(k);
    for (std::size_t p = 0; p < k; ++p) w[p] = std::exp(std::clamp(u[p], lo[p], hi[p]));
    return w;
  };
  auto objective = [&](std::span<const double> omega) {
    MomentCache cache(&frozen_cache, cfg.quad_tol);
    try {
      const Candidate c = evaluate(n, omega, h, family, frozen, cfg, cache);
      const double v = objective_value(c.variance, n, cfg);
      return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  // Multistart: log grid over the box, plus family seeds and the optima of earlier
  // levels, which are always refined.
  std::vector<std::vector<double>> starts;
  const int g = std::max(1, cfg.optimizer.grid_points);
  std::vector<int> idx(k, 0);
  while (true) {
    std::vector<double> u(k);
    for (std::size_t p = 0; p < k; ++p) {
      u[p] = g == 1 ? 0.5 * (lo[p] + hi[p]) : lo[p] + (hi[p] - lo[p]) * idx[p] / (g - 1);
    }
    starts.push_back(to_omega(u));
    std::size_t p = 0;
    while (p < k && ++idx[p] == g) idx[p++] = 0;
    if (p == k) break;
  }
  const std::size_t grid_count = starts.size();
  for (const auto& s : family.seeds) {
    if (s.size() == k) starts.push_back(s);
  }
  for (const auto& f : frozen) {
    if (f.omega.size() == k) starts.push_back(f.omega);
  }

  std::vector<StartResult> grid(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) { grid[i] = StartResult{starts[i], objective(starts[i]), i}; });
  std::vector<StartResult> ranked = grid;
  const double tol = cfg.optimizer.simplex.objective_tol;
  std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) { return better(a, b, tol); });
  if (ranked.empty() || !std::isfinite(ranked.front().value)) {
    throw SolverError("solve_level " + std::to_string(n) + ": all starting points infeasible");
  }

  const std::size_t top = std::min<std::size_t>(std::max(1, cfg.optimizer.refine_starts), ranked.size());
  std::vector<StartResult> chosen(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(top));
  for (std::size_t i = top; i < ranked.size(); ++i) {
    if (ranked[i].index >= grid_count && std::isfinite(ranked[i].value)) chosen.push_back(ranked[i]);
  }
  std::vector<StartResult> refined(chosen.size());
  parallel_for(chosen.size(), [&](std::size_t r) {
    const auto& s = chosen[r];
    std::vector<double> u0(k);
    for (std::size_t p = 0; p < k; ++p) u0[p] = std::log(s.omega[p]);
    auto in_log = [&](std::span<const double> u) { return objective(to_omega(u)); };
    const NelderMeadResult res = nelder_mead(in_log, u0, cfg.optimizer.simplex);
    refined[r] = StartResult{to_omega(res.x), res.value, r};
    if (!(refined[r].value <= s.value)) refined[r] = StartResult{s.omega, s.value, r};
  });
  std::stable_sort(refined.begin(), refined.end(), [&](const auto& a, const auto& b) { return better(a, b, tol); });
  const StartResult& best = refined.front();
  if (!std::isfinite(best.value)) {
    throw SolverError("solve_level " + std::to_string(n) + ": non-finite objective at omega " + format_omega(best.omega));
  }

  MomentCache cache(&frozen_cache, cfg.quad_tol);
  Candidate c = evaluate(n, best.omega, h, family, frozen, cfg, cache);
  if (!std::isfinite(c.variance.energy) || !std::isfinite(c.variance.r_sq)) {
    throw SolverError("solve_level " + std::to_string(n) + ": non-finite objective at omega " + format_omega(best.omega));
  }
  SpectrumEstimate est;
  est.level = n;
  est.energy = c.variance.energy;
  est.residual = std::sqrt(c.variance.r_sq);
  est.omega = best.omega;
  est.coeffs = c.ortho.coeffs;
  est.state = std::move(c.ortho.state);
  est.h_state = std::move(c.h_state);
  est.norm_sq = c.variance.norm_sq;
  return est;
}

std::vector<SpectrumEstimate> solve_tower(std::size_t levels, const HamiltonianSpec& h, const AnsatzFamily& family,
                                          const SolverConfig& cfg) {
  if (levels < 1) throw DomainError("solve_tower: need at least one level");
  std::vector<SpectrumEstimate> tower;
  tower.reserve(levels);
  for (std::size_t n = 0; n < levels; ++n) {
    try {
      tower.push_back(solve_level(n, h, family, tower, cfg));
    } catch (const SolverError& e) {
      throw SolverError(family.name + " level " + std::to_string(n) + ": " + e.what());
    }
  }
  return tower;
}

bool error_bound_check(const SpectrumEstimate& est, double reference) {
  return std::abs(reference - est.energy) <= est.residual;
}

double max_relative_overlap(const std::vector<SpectrumEstimate>& tower, double quad_tol) {
  MomentCache cache(nullptr, quad_tol);
  double worst = 0.0;
  for (std::size_t i = 0; i < tower.size(); ++i) {
    for (std::size_t j = i + 1; j < tower.size(); ++j) {
      const double o = std::abs(inner_product(tower[i].state, tower[j].state, &cache)) /
                       std::sqrt(tower[i].norm_sq * tower[j].norm_sq);
      worst = std::max(worst, o);
    }
  }
  return worst;
}

}  // namespace varspec::engine
