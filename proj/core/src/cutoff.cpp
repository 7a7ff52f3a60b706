#include "varspec/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "varspec/error.hpp"
#include "varspec/parallel.hpp"
#include "varspec/quad.hpp"

namespace varspec::cutoff {

namespace {

constexpr double kAlpha = 5.0;

/// Generalized Laguerre L_n^{(alpha)}(r) by the three-term recurrence.
double laguerre(std::size_t n, double alpha, double r) {
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - r;
  for (std::size_t k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - r) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double radial_norm(std::size_t n) {
  double p = 1.0;
  for (int k = 1; k <= 5; ++k) p *= static_cast<double>(n + k);
  return 1.0 / std::sqrt(p);
}

}  // namespace

std::size_t pairing(std::size_t l, std::size_t n) { return (l + n) * (l + n + 1) / 2 + n; }

std::pair<std::size_t, std::size_t> unpairing(std::size_t a) {
  auto w = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(a) + 1.0) - 1.0) / 2.0);
  while (w * (w + 1) / 2 > a) --w;
  while ((w + 1) * (w + 2) / 2 <= a) ++w;
  const std::size_t n = a - w * (w + 1) / 2;
  return {w - n, n};
}

double RadialBasis::value_reduced(std::size_t n, double r) const {
  if (n > max_n_) throw DomainError("RadialBasis: index " + std::to_string(n) + " above maximum");
  return radial_norm(n) * laguerre(n, kAlpha, r);
}

double RadialBasis::derivative_reduced(std::size_t n, double r) const {
  if (n > max_n_) throw DomainError("RadialBasis: index " + std::to_string(n) + " above maximum");
  const double dl = n == 0 ? 0.0 : -laguerre(n - 1, kAlpha + 1.0, r);
  return radial_norm(n) * (dl - 0.5 * laguerre(n, kAlpha, r));
}

double RadialBasis::value(std::size_t n, double r) const { return value_reduced(n, r) * std::exp(-0.5 * r); }

double RadialBasis::derivative(std::size_t n, double r) const {
  return derivative_reduced(n, r) * std::exp(-0.5 * r);
}

double AngularBasis::value(std::size_t l, double u) const {
  if (l > max_l_) throw DomainError("AngularBasis: index " + std::to_string(l) + " above maximum");
  double prev = 1.0, cur = u;
  if (l == 0) {
    cur = 1.0;
  } else {
    for (std::size_t k = 1; k < l; ++k) {
      const double next = ((2.0 * k + 1.0) * u * cur - k * prev) / (k + 1.0);
      prev = cur;
      cur = next;
    }
  }
  return std::sqrt((2.0 * l + 1.0) / 2.0) * cur;
}

std::string to_string(SignConvention s) { return s == SignConvention::AsWritten ? "as_written" : "repulsive"; }

SignConvention parse_sign_convention(const std::string& name) {
  if (name == "as_written") return SignConvention::AsWritten;
  if (name == "repulsive") return SignConvention::Repulsive;
  throw DomainError("unknown sign convention '" + name + "'");
}

double angular_factor(std::size_t l, std::size_t lp) {
  if (l == lp) return 1.0;
  if (l + 1 == lp || lp + 1 == l) {
    const double m = static_cast<double>(std::min(l, lp));
    return -(m + 1.0) / std::sqrt((2.0 * m + 1.0) * (2.0 * m + 3.0));
  }
  return 0.0;
}

RadialIntegrals::RadialIntegrals(std::size_t max_n)
    : max_n_(max_n),
      kinetic_(max_n + 1, max_n + 1),
      inv_sq_(max_n + 1, max_n + 1),
      quartic_(max_n + 1, max_n + 1),
      overlap_(max_n + 1, max_n + 1) {
  // Highest integrand: r^9 times two degree-max_n polynomials.
  const int degree = static_cast<int>(2 * max_n + 9);
  const quad::QuadRule rule = quad::gauss_laguerre((degree + 12 + 1) / 2 + 8);
  const RadialBasis basis(max_n);
  const std::size_t m = rule.size();
  Eigen::MatrixXd p(max_n + 1, m), d(max_n + 1, m);
  for (std::size_t n = 0; n <= max_n; ++n) {
    for (std::size_t i = 0; i < m; ++i) {
      p(n, i) = basis.value_reduced(n, rule.nodes[i]);
      d(n, i) = basis.derivative_reduced(n, rule.nodes[i]);
    }
  }
  auto weighted = [&](int power) {
    Eigen::VectorXd w(m);
    for (std::size_t i = 0; i < m; ++i) w(i) = rule.weights[i] * std::pow(rule.nodes[i], power);
    return w;
  };
  kinetic_ = d * weighted(5).asDiagonal() * d.transpose();
  inv_sq_ = p * weighted(3).asDiagonal() * p.transpose();
  quartic_ = p * weighted(9).asDiagonal() * p.transpose();
  overlap_ = p * weighted(5).asDiagonal() * p.transpose();
}

double matrix_element(std::size_t l, std::size_t n, std::size_t lp, std::size_t np, SignConvention sign,
                      const RadialIntegrals& radial) {
  if (n > radial.max_n() || np > radial.max_n()) throw DomainError("matrix_element: radial index out of range");
  double v = 0.0;
  if (l == lp) {
    const double centrifugal = 16.0 * static_cast<double>(l * (l + 1)) * radial.inverse_square(n, np);
    v += radial.kinetic(n, np) + (sign == SignConvention::Repulsive ? centrifugal : -centrifugal);
  }
  v += radial.quartic(n, np) / 8.0 * angular_factor(l, lp);
  return v;
}

double matrix_element(std::size_t l, std::size_t n, std::size_t lp, std::size_t np, SignConvention sign) {
  return matrix_element(l, n, lp, np, sign, RadialIntegrals(std::max(n, np)));
}

CutoffMatrix assemble(std::size_t N, SignConvention sign) {
  std::vector<std::pair<std::size_t, std::size_t>> index(N + 1);
  std::size_t max_n = 0;
  for (std::size_t a = 0; a <= N; ++a) {
    index[a] = unpairing(a);
    max_n = std::max(max_n, index[a].second);
  }
  const RadialIntegrals radial(max_n);
  CutoffMatrix out{N, sign, Eigen::MatrixXd(N + 1, N + 1)};
  parallel_for(N + 1, [&](std::size_t a) {
    for (std::size_t b = 0; b <= N; ++b) {
      out.entries(a, b) = matrix_element(index[a].first, index[a].second, index[b].first, index[b].second, sign, radial);
    }
  });
  const double asym = (out.entries - out.entries.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(1.0, out.entries.cwiseAbs().maxCoeff())) {
    throw SolverError("assemble: matrix not symmetric, deviation " + std::to_string(asym));
  }
  return out;
}

std::vector<double> lowest_eigenvalues(const Eigen::MatrixXd& m, std::size_t k) {
  if (m.rows() != m.cols()) throw DomainError("lowest_eigenvalues: matrix not square");
  if (k < 1 || k > static_cast<std::size_t>(m.rows())) {
    throw DomainError("lowest_eigenvalues: k must lie in [1, " + std::to_string(m.rows()) + "]");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw SolverError("lowest_eigenvalues: eigensolver did not converge");
  const double scale = std::max(m.norm(), std::numeric_limits<double>::min());
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    const double res = (m * solver.eigenvectors().col(idx) - solver.eigenvalues()(idx) * solver.eigenvectors().col(idx)).norm();
    if (res > 1e-8 * scale) {
      throw SolverError("lowest_eigenvalues: eigenpair " + std::to_string(i) + " residual " + std::to_string(res));
    }
    out[i] = solver.eigenvalues()(idx);
  }
  return out;
}

std::vector<double> lowest_eigenvalues(const CutoffMatrix& m, std::size_t k) { return lowest_eigenvalues(m.entries, k); }

ConvergenceScan convergence_scan(const std::vector<std::size_t>& cutoffs, std::size_t k, SignConvention sign,
                                 double slack) {
  if (cutoffs.empty()) throw DomainError("convergence_scan: empty cut-off list");
  for (std::size_t i = 1; i < cutoffs.size(); ++i) {
    if (cutoffs[i] <= cutoffs[i - 1]) throw DomainError("convergence_scan: cut-offs must be ascending");
  }
  if (cutoffs.front() + 1 < k) throw DomainError("convergence_scan: smallest cut-off has fewer than k states");
  const CutoffMatrix full = assemble(cutoffs.back(), sign);
  ConvergenceScan scan{sign, std::vector<ScanRow>(cutoffs.size())};
  parallel_for(cutoffs.size(), [&](std::size_t i) {
    const auto size = static_cast<Eigen::Index>(cutoffs[i] + 1);
    scan.rows[i] = ScanRow{cutoffs[i], lowest_eigenvalues(Eigen::MatrixXd(full.entries.topLeftCorner(size, size)), k)};
  });
  for (std::size_t i = 1; i < scan.rows.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double prev = scan.rows[i - 1].eigenvalues[j], cur = scan.rows[i].eigenvalues[j];
      if (cur > prev + slack * std::max(1.0, std::abs(prev))) {
        throw SolverError("convergence_scan: E" + std::to_string(j) + " increases from N=" +
                          std::to_string(scan.rows[i - 1].cutoff) + " to N=" + std::to_string(scan.rows[i].cutoff));
      }
    }
  }
  return scan;
}

ConvergenceScan convergence_scan_auto(const std::vector<std::size_t>& cutoffs, std::size_t k, std::string* rejected) {
  if (cutoffs.size() < 2) throw DomainError("convergence_scan_auto: need at least two cut-offs");
  std::vector<ConvergenceScan> scans;
  std::string reasons;
  for (auto sign : {SignConvention::AsWritten, SignConvention::Repulsive}) {
    try {
      scans.push_back(convergence_scan(cutoffs, k, sign));
    } catch (const SolverError& e) {
      reasons += to_string(sign) + ": " + e.what() + "; ";
    }
  }
  if (scans.empty()) throw SolverError("convergence_scan_auto: no convention converges (" + reasons + ")");
  auto drift = [](const ConvergenceScan& s) {
    const auto& a = s.rows[s.rows.size() - 2].eigenvalues[0];
    const auto& b = s.rows.back().eigenvalues[0];
    return std::abs(a - b) / std::max(1.0, std::abs(b));
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < scans.size(); ++i) {
    if (drift(scans[i]) < drift(scans[best])) best = i;
  }
  if (rejected != nullptr) {
    for (std::size_t i = 0; i < scans.size(); ++i) {
      if (i != best) reasons += to_string(scans[i].sign) + ": lowest eigenvalue drift " + std::to_string(drift(scans[i])) + "; ";
    }
    *rejected = reasons;
  }
  return scans[best];
}

void write_csv(std::ostream& os, const ConvergenceScan& scan) {
  const std::size_t k = scan.rows.empty() ? 0 : scan.rows.front().eigenvalues.size();
  os << "N";
  for (std::size_t j = 0; j < k; ++j) os << ",E" << j;
  os << "\n";
  const auto old = os.precision(12);
  for (const auto& row : scan.rows) {
    os << row.cutoff;
    for (double e : row.eigenvalues) os << "," << e;
    os << "\n";
  }
  os.precision(old);
}

}  // namespace varspec::cutoff
