#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace varspec::quad {

enum class RuleKind { Legendre, Laguerre };

/// Fixed Gauss rule. Legendre rules live on [-1, 1] with unit weight, Laguerre rules
/// on [0, inf) with weight e^{-r}.
struct QuadRule {
  RuleKind kind;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }

  /// Sum of w_i f(x_i).
  template <class F>
  double apply(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

QuadRule gauss_legendre(int n);
QuadRule gauss_laguerre(int n);

enum class Domain { RealLine, HalfLine };

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
};

struct AdaptiveOptions {
  double tol = 1e-10;
  std::size_t max_intervals = 4000;
};

/// Adaptive Gauss-Kronrod (7/15) integration over R or [0, inf). Each half-line is
/// mapped to [0, 1) by t = x / (1 + x). Stops once the summed error estimate is at most
/// tol * (1 + |value|); throws IntegrationError when the interval budget runs out.
IntegrationResult integrate_1d(const std::function<double(double)>& f, Domain domain,
                               double tol = 1e-10);

/// Vector-valued variant used for moment tables on [0, inf). The callback fills
/// `out` (length `components`) with the integrand at x. Convergence is judged per
/// component relative to its own magnitude, which is what moment tables of positive
/// integrands need.
std::vector<double> integrate_half_line_vector(
    const std::function<void(double x, std::span<double> out)>& f, std::size_t components,
    const AdaptiveOptions& options = {});

}  // namespace varspec::quad
