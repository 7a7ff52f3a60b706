#include "varspec/hamiltonian.hpp"

namespace varspec {

std::string HamiltonianSpec::name() const {
  switch (label) {
    case ModelLabel::Anharmonic1D:
      return "anharmonic";
    case ModelLabel::X2Y2:
      return "x2y2";
    case ModelLabel::SU2MatrixModel:
      return "su2(d=" + std::to_string(vectors) + ")";
    case ModelLabel::RescaledSU2:
      return "su2-rescaled(d=" + std::to_string(vectors) + ")";
    case ModelLabel::Custom:
      break;
  }
  return "custom";
}

}  // namespace varspec
