#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "varspec/engine.hpp"
#include "varspec/hamiltonian.hpp"
#include "varspec/wavefunction.hpp"

namespace varspec::models {

enum class Parity { Even, Odd };
/// gn: x^n e^{-w x^2/2}; gn2: x^n e^{-w1 x^2/2 - w2 x^4/4}.
enum class AnharmonicBasis { Gn, Gn2 };
enum class X2Y2Sector { EEE, EEO, OOE, OOO, EOminusOE };

/// -d^2/dx^2 + x^4.
HamiltonianSpec anharmonic_hamiltonian();
engine::AnsatzFamily anharmonic_family(Parity sector, AnharmonicBasis basis);

/// -d_x^2 - d_y^2 + x^2 y^2.
HamiltonianSpec x2y2_hamiltonian();
/// e^{-w1 y^2 - w2 x^2 - w3 x^2 y^2} + e^{-w1 x^2 - w2 y^2 - w3 x^2 y^2}.
WaveFunction x2y2_density(std::span<const double> omega);
/// Sector prefactor of level n: x^{2n} + y^{2n} (EEE) or x^{2n+2} - y^{2n+2} (EEO).
Polynomial x2y2_prefactor(X2Y2Sector sector, std::size_t level);
engine::AnsatzFamily x2y2_family(X2Y2Sector sector, engine::Method method);
std::string to_string(X2Y2Sector sector);
X2Y2Sector parse_x2y2_sector(const std::string& name);

/// sum_{i<j} (q_i x q_j)^2 over d vectors in R^3, coordinates ordered q_{1x}, q_{1y}, ...
Polynomial su2_potential(int d);
/// Hamiltonian in 3d coordinates; `rescaled` multiplies it by d^{-4/3}.
HamiltonianSpec su2_hamiltonian(int d, bool rescaled = false);
/// Level 0: e^{-w sum q^2 / 2}; level 1: (sum q^2) e^{-w sum q^2 / 2}.
engine::AnsatzFamily su2_family(int d);

struct SU2Moments {
  double h_mean;
  double h2_mean;
  double r_sq;
};

/// <H>, <H^2> and <H^2> - <H>^2 for the level-0 Gaussian, non-rescaled.
SU2Moments su2_analytic(int d, double omega0);

struct SU2Ground {
  double omega_min;
  double e0;     ///< non-rescaled
  double r0_sq;  ///< non-rescaled
  double characteristic_residual;
};
SU2Ground su2_ground_closed_form(int d);

struct SU2Asymptotics {
  double omega_asym;
  double e0_asym;
  double r0_sq_asym;
};
/// Leading large-d behaviour, non-rescaled.
SU2Asymptotics su2_large_d_asymptotics(double d);

struct SU2Excited {
  double omega1_min;
  double e1;  ///< rescaled by d^{-4/3}
};
/// Minimizes the closed-form Rayleigh quotient of the level-1 Method-2 state with
/// omega0 frozen at its closed-form minimizer.
SU2Excited su2_excited_closed_form(int d);
/// The level-1 Rayleigh quotient (rescaled) at omega1; throws DomainError when the norm
/// expression is not positive.
double su2_excited_rayleigh(int d, double omega1);

/// d^{-4/3}.
double su2_rescale(double d);

}  // namespace varspec::models
