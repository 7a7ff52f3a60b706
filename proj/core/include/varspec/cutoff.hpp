#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace varspec::cutoff {

/// p(l, n) = (l + n)(l + n + 1)/2 + n.
std::size_t pairing(std::size_t l, std::size_t n);
/// Inverse of `pairing`, returned as (l, n).
std::pair<std::size_t, std::size_t> unpairing(std::size_t a);

/// phi_n(r) = sqrt(n!/(n+5)!) L_n^{(5)}(r) e^{-r/2}, orthonormal for the weight r^5.
class RadialBasis {
 public:
  explicit RadialBasis(std::size_t max_n) : max_n_(max_n) {}
  std::size_t max_n() const noexcept { return max_n_; }
  double value(std::size_t n, double r) const;
  double derivative(std::size_t n, double r) const;
  /// Same without the e^{-r/2} factor.
  double value_reduced(std::size_t n, double r) const;
  double derivative_reduced(std::size_t n, double r) const;

 private:
  std::size_t max_n_;
};

/// sqrt((2l+1)/2) P_l(u), orthonormal on [-1, 1].
class AngularBasis {
 public:
  explicit AngularBasis(std::size_t max_l) : max_l_(max_l) {}
  std::size_t max_l() const noexcept { return max_l_; }
  double value(std::size_t l, double u) const;

 private:
  std::size_t max_l_;
};

/// Sign of the l(l+1)/r^2 term: `AsWritten` keeps the operator as printed, which makes
/// it attractive; `Repulsive` flips it to the usual centrifugal barrier.
enum class SignConvention { AsWritten, Repulsive };
std::string to_string(SignConvention s);
SignConvention parse_sign_convention(const std::string& name);

/// <(1 - u) P_l, P_l'> for orthonormal Legendre polynomials.
double angular_factor(std::size_t l, std::size_t lp);

/// Radial integrals for every (n, n') up to a maximum index, computed once with a
/// Gauss-Laguerre rule exact for all of them.
class RadialIntegrals {
 public:
  explicit RadialIntegrals(std::size_t max_n);
  std::size_t max_n() const noexcept { return max_n_; }
  double kinetic(std::size_t n, std::size_t np) const { return kinetic_(n, np); }
  double inverse_square(std::size_t n, std::size_t np) const { return inv_sq_(n, np); }
  double quartic(std::size_t n, std::size_t np) const { return quartic_(n, np); }
  double overlap(std::size_t n, std::size_t np) const { return overlap_(n, np); }

 private:
  std::size_t max_n_;
  Eigen::MatrixXd kinetic_, inv_sq_, quartic_, overlap_;
};

double matrix_element(std::size_t l, std::size_t n, std::size_t lp, std::size_t np, SignConvention sign);
double matrix_element(std::size_t l, std::size_t n, std::size_t lp, std::size_t np, SignConvention sign,
                      const RadialIntegrals& radial);

struct CutoffMatrix {
  std::size_t cutoff = 0;
  SignConvention sign = SignConvention::AsWritten;
  Eigen::MatrixXd entries;
};

CutoffMatrix assemble(std::size_t N, SignConvention sign);

/// The k smallest eigenvalues, ascending. Throws SolverError when an eigenpair
/// residual exceeds 1e-8 ||M||.
std::vector<double> lowest_eigenvalues(const Eigen::MatrixXd& m, std::size_t k);
std::vector<double> lowest_eigenvalues(const CutoffMatrix& m, std::size_t k);

struct ScanRow {
  std::size_t cutoff;
  std::vector<double> eigenvalues;
};

struct ConvergenceScan {
  SignConvention sign = SignConvention::AsWritten;
  std::vector<ScanRow> rows;
};

/// Eigenvalues for each cut-off in `cutoffs` (ascending). Throws SolverError when a
/// column increases with N by more than `slack`.
ConvergenceScan convergence_scan(const std::vector<std::size_t>& cutoffs, std::size_t k, SignConvention sign,
                                 double slack = 1e-9);

/// Runs both conventions and keeps the one whose lowest eigenvalue moves least between
/// the two largest cut-offs and never increases. `rejected` receives the other scan's
/// failure reason, if any.
ConvergenceScan convergence_scan_auto(const std::vector<std::size_t>& cutoffs, std::size_t k,
                                      std::string* rejected = nullptr);

/// CSV with columns N,E0,...,E{k-1}.
void write_csv(std::ostream& os, const ConvergenceScan& scan);

}  // namespace varspec::cutoff
