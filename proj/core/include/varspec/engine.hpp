#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "varspec/error.hpp"
#include "varspec/hamiltonian.hpp"
#include "varspec/optimize.hpp"
#include "varspec/symcore.hpp"
#include "varspec/wavefunction.hpp"

namespace varspec::engine {

/// Mixing of earlier levels: Method1 re-evaluates every basis member at the candidate
/// parameters and solves a linear system; Method2 mixes the frozen states themselves
/// with closed-form coefficients.
enum class Method { Method1, Method2 };
enum class Objective { ResidualNorm, RayleighForGroundState };

struct ParamInterval {
  double lo;
  double hi;
};

/// Indexed trial functions f_n(x; omega) for one symmetry sector.
struct AnsatzFamily {
  std::string name;
  std::size_t dim = 1;
  std::size_t param_count = 1;
  std::function<WaveFunction(std::size_t level, std::span<const double> omega)> basis;
  std::vector<ParamInterval> box;
  /// Extra multistart points tried at every level besides the log grid.
  std::vector<std::vector<double>> seeds;
};

struct SpectrumEstimate {
  std::size_t level = 0;
  double energy = 0.0;
  double residual = 0.0;  ///< R, not R^2
  std::vector<double> omega;
  std::vector<double> coeffs;
  WaveFunction state;
  WaveFunction h_state;  ///< H applied to `state`
  double norm_sq = 0.0;
};

struct OptimizerSettings {
  int grid_points = 5;     ///< log-spaced points per parameter
  int refine_starts = 3;   ///< best grid points refined by the simplex
  NelderMeadOptions simplex;
};

struct SolverConfig {
  Method method = Method::Method1;
  Objective objective = Objective::ResidualNorm;
  OptimizerSettings optimizer;
  double orthogonality_tol = 1e-8;
  double condition_limit = 1e12;
  double quad_tol = 1e-10;
};

/// A candidate level-n state and its mixing coefficients c_{n,0..n-1}.
struct Orthogonalized {
  WaveFunction state;
  std::vector<double> coeffs;
  double max_overlap = 0.0;  ///< max_j |<psi_j, psi_n>| / (||psi_j|| ||psi_n||)
};

/// The Method-1 Gram system is singular or too ill-conditioned at this parameter point.
class DegenerateBasisError : public SolverError {
 public:
  using SolverError::SolverError;
};

Orthogonalized orthogonalize_m1(std::size_t n, std::span<const double> omega, const AnsatzFamily& family,
                                const std::vector<SpectrumEstimate>& frozen, const SolverConfig& cfg = {},
                                MomentCache* cache = nullptr);

Orthogonalized orthogonalize_m2(std::size_t n, std::span<const double> omega, const AnsatzFamily& family,
                                const std::vector<SpectrumEstimate>& frozen, const SolverConfig& cfg = {},
                                MomentCache* cache = nullptr);

SpectrumEstimate solve_level(std::size_t n, const HamiltonianSpec& h, const AnsatzFamily& family,
                             const std::vector<SpectrumEstimate>& frozen, const SolverConfig& cfg);

std::vector<SpectrumEstimate> solve_tower(std::size_t levels, const HamiltonianSpec& h,
                                          const AnsatzFamily& family, const SolverConfig& cfg);

/// |reference - energy| <= R.
bool error_bound_check(const SpectrumEstimate& est, double reference);

/// max_{i<j} |<psi_i, psi_j>| / (||psi_i|| ||psi_j||) over a tower.
double max_relative_overlap(const std::vector<SpectrumEstimate>& tower, double quad_tol = 1e-10);

}  // namespace varspec::engine
