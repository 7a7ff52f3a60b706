#pragma once

#include <span>
#include <vector>

#include "varspec/kernel.hpp"
#include "varspec/polynomial.hpp"

namespace varspec {

/// Polynomial prefactor times an exponential kernel.
struct PolyExp {
  Polynomial poly;
  ExpKernel kernel;

  PolyExp(Polynomial p, ExpKernel k);

  std::size_t dim() const noexcept { return poly.dim(); }
  double evaluate(std::span<const double> x) const;
};

/// Finite sum of PolyExp terms. Terms sharing an identical kernel are merged, so each
/// kernel appears at most once.
class WaveFunction {
 public:
  WaveFunction() = default;
  WaveFunction(PolyExp term);  // NOLINT(google-explicit-constructor)
  explicit WaveFunction(std::vector<PolyExp> terms);

  std::size_t dim() const;
  bool empty() const noexcept { return terms_.empty(); }
  const std::vector<PolyExp>& terms() const noexcept { return terms_; }

  void add(const PolyExp& term);
  WaveFunction& operator+=(const WaveFunction& other);
  WaveFunction& operator*=(double s);

  friend WaveFunction operator+(WaveFunction a, const WaveFunction& b) { return a += b; }
  friend WaveFunction operator*(double s, WaveFunction a) { return a *= s; }

  double evaluate(std::span<const double> x) const;

 private:
  std::vector<PolyExp> terms_;
};

}  // namespace varspec
