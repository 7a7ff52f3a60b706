#pragma once

#include <map>
#include <memory>
#include <vector>

#include "varspec/hamiltonian.hpp"
#include "varspec/quad.hpp"
#include "varspec/wavefunction.hpp"

namespace varspec {

/// Integral of x^n e^{-omega x^2} over the real line.
double gaussian_moment(int n, double omega);

/// (-sum_i d_i^2 + V) f, exact, written over the kernel of f.
WaveFunction apply_hamiltonian(const HamiltonianSpec& h, const PolyExp& f);
WaveFunction apply_hamiltonian(const HamiltonianSpec& h, const WaveFunction& f);

/// Moments of the weight e^{-(Q1 + Q2)} produced by a pair of kernels, stored in a
/// canonical coordinate orientation.
class MomentTable {
 public:
  virtual ~MomentTable() = default;
  virtual bool covers(const MultiIndex& max_exponents) const = 0;
  virtual double moment(const MultiIndex& exponents) const = 0;
};

/// A table seen from the caller's coordinate order (two-coordinate tables may be
/// stored with x and y exchanged).
struct MomentView {
  const MomentTable* table = nullptr;
  bool swap_xy = false;

  double moment(const MultiIndex& exponents) const;
};

/// Memoizes moment tables by combined weight. A cache may have a read-only parent that
/// is consulted first; a parent must outlive its children and must not be written to
/// while children read it.
class MomentCache {
 public:
  explicit MomentCache(const MomentCache* parent = nullptr, double tol = 1e-10)
      : parent_(parent), tol_(tol) {}

  /// Table for the product kernel of `k1` and `k2`, large enough for `max_exponents`.
  MomentView table(const ExpKernel& k1, const ExpKernel& k2, const MultiIndex& max_exponents);

  std::size_t size() const noexcept { return tables_.size(); }
  double tolerance() const noexcept { return tol_; }

 private:
  const MomentTable* find(const std::vector<double>& key, const MultiIndex& max_exponents) const;

  const MomentCache* parent_;
  double tol_;
  std::map<std::vector<double>, std::unique_ptr<MomentTable>> tables_;
};

/// <f, g> = integral of f g over R^dim. Exactly symmetric in its arguments.
double inner_product(const PolyExp& f, const PolyExp& g, MomentCache* cache = nullptr);
double inner_product(const WaveFunction& f, const WaveFunction& g, MomentCache* cache = nullptr);

/// <psi, H psi> / ||psi||^2.
double rayleigh(const WaveFunction& psi, const HamiltonianSpec& h, MomentCache* cache = nullptr);

/// ||(H - E) psi||^2 / ||psi||^2.
double residual_sq(const WaveFunction& psi, const HamiltonianSpec& h, double energy,
                   MomentCache* cache = nullptr);

struct VarianceResult {
  double energy;   ///< Rayleigh quotient, the E minimizing the residual.
  double r_sq;     ///< residual at that E, i.e. <H^2> - <H>^2.
  double norm_sq;  ///< ||psi||^2
  double h_mean;   ///< same as energy
  double h2_mean;  ///< ||H psi||^2 / ||psi||^2
};

VarianceResult variance_objective(const WaveFunction& psi, const HamiltonianSpec& h,
                                  MomentCache* cache = nullptr);

/// Same as above with H psi already available.
VarianceResult variance_objective(const WaveFunction& psi, const WaveFunction& h_psi,
                                  MomentCache* cache = nullptr);

}  // namespace varspec
