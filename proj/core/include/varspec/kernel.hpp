#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>

#include "varspec/polynomial.hpp"

namespace varspec {

/// e^{-omega * sum_i x_i^2 / 2} in `dim` coordinates.
struct IsoGaussian {
  double omega;
  std::size_t dim;
  bool operator==(const IsoGaussian&) const = default;
};

/// e^{-omega1 x^2 / 2 - omega2 x^4 / 4}.
struct Quartic1D {
  double omega1;
  double omega2;
  bool operator==(const Quartic1D&) const = default;
};

/// e^{-a y^2 - b x^2 - c x^2 y^2}, coordinates ordered (x, y).
struct CoupledXY {
  double a;
  double b;
  double c;
  bool operator==(const CoupledXY&) const = default;
};

using ExpKernel = std::variant<IsoGaussian, Quartic1D, CoupledXY>;

std::size_t kernel_dim(const ExpKernel& k);

/// The polynomial Q with kernel = e^{-Q}.
Polynomial kernel_exponent(const ExpKernel& k);

double kernel_value(const ExpKernel& k, std::span<const double> x);

/// Throws DomainError when the parameters cannot give a square-integrable kernel.
void validate_kernel(const ExpKernel& k);

std::string describe(const ExpKernel& k);

}  // namespace varspec
