#pragma once

#include <cstddef>
#include <string>

#include "varspec/polynomial.hpp"

namespace varspec {

enum class ModelLabel { Anharmonic1D, X2Y2, SU2MatrixModel, RescaledSU2, Custom };

/// H = scale * (-sum_i d^2/dx_i^2 + V(x)) with polynomial V.
struct HamiltonianSpec {
  std::size_t dim = 1;
  Polynomial potential{1};
  double scale = 1.0;
  ModelLabel label = ModelLabel::Custom;
  /// Number of vectors for the matrix model; 0 otherwise.
  int vectors = 0;

  std::string name() const;
};

}  // namespace varspec
