#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "varspec/engine.hpp"
#include "varspec/error.hpp"
#include "varspec/models.hpp"

using namespace varspec;
using namespace varspec::engine;

namespace {

HamiltonianSpec harmonic() {
  HamiltonianSpec h;
  h.dim = 1;
  h.potential = Polynomial::monomial({2});
  return h;
}

SpectrumEstimate frozen_state(const WaveFunction& psi, const HamiltonianSpec& h, std::vector<double> omega) {
  SpectrumEstimate e;
  e.state = psi;
  e.h_state = apply_hamiltonian(h, psi);
  e.norm_sq = inner_product(psi, psi);
  e.omega = std::move(omega);
  return e;
}

}  // namespace

TEST(Orthogonalize, LevelZeroIsTheBasisFunction) {
  const auto fam = models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn);
  const double w[] = {1.3};
  const auto o = orthogonalize_m1(0, w, fam, {});
  EXPECT_TRUE(o.coeffs.empty());
  EXPECT_EQ(o.state.terms().size(), 1u);
  EXPECT_EQ(o.state.terms()[0].poly, Polynomial::constant(1, 1.0));
}

TEST(Orthogonalize, Method1OneByOneSystem) {
  const auto h = models::anharmonic_hamiltonian();
  const auto fam = models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn);
  const double w0 = 1.5, w1 = 1.9;
  const auto psi0 = frozen_state(WaveFunction(PolyExp(Polynomial::constant(1, 1.0), IsoGaussian{w0, 1})), h, {w0});
  const double w[] = {w1};
  const auto o = orthogonalize_m1(1, w, fam, {psi0});
  // c = -<x^2 g(w1), psi0> / <g(w1), psi0>, both Gaussian moments with exponent (w0 + w1)/2.
  const double a = 0.5 * (w0 + w1);
  const double expected = -gaussian_moment(2, a) / gaussian_moment(0, a);
  ASSERT_EQ(o.coeffs.size(), 1u);
  EXPECT_NEAR(o.coeffs[0], expected, 1e-13);
  EXPECT_LT(std::abs(inner_product(psi0.state, o.state)), 1e-12);
}

TEST(Orthogonalize, Method1LevelTwoOrthogonal) {
  const auto h = models::anharmonic_hamiltonian();
  const auto fam = models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn);
  SolverConfig cfg;
  const auto tower = solve_tower(2, h, fam, cfg);
  const double w[] = {2.0};
  const auto o = orthogonalize_m1(2, w, fam, tower, cfg);
  for (const auto& f : tower) {
    const double rel = std::abs(inner_product(f.state, o.state)) /
                       std::sqrt(f.norm_sq * inner_product(o.state, o.state));
    EXPECT_LT(rel, 1e-10);
  }
}

TEST(Orthogonalize, Method1DegenerateGramIsReported) {
  // Two frozen states built from the same function make the Gram system singular.
  const auto h = models::anharmonic_hamiltonian();
  const auto fam = models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn);
  const auto g = frozen_state(WaveFunction(PolyExp(Polynomial::constant(1, 1.0), IsoGaussian{1.0, 1})), h, {1.0});
  const double w[] = {1.0};
  EXPECT_THROW(orthogonalize_m1(2, w, fam, {g, g}), DegenerateBasisError);
}

TEST(Orthogonalize, Method2Su2CoefficientClosedForm) {
  for (int d : {2, 3}) {
    const auto h = models::su2_hamiltonian(d);
    const auto fam = models::su2_family(d);
    const double w0 = 1.2, w1 = 1.7;
    const double wa[] = {w0};
    const auto psi0 = frozen_state(fam.basis(0, wa), h, {w0});
    const double wb[] = {w1};
    const auto o = orthogonalize_m2(1, wb, fam, {psi0});
    const double expected = -3.0 * d / (w1 + w0) * std::pow(std::sqrt(2 * w0 / (w1 + w0)), 3 * d);
    EXPECT_NEAR(o.coeffs[0], expected, 1e-12 * std::abs(expected));
    if (d == 2) {
      EXPECT_NEAR(o.coeffs[0], -48 * std::pow(w0, 3) / std::pow(w1 + w0, 4), 1e-12);
    }
  }
}

TEST(Orthogonalize, Method2AlreadyOrthogonalGivesZero) {
  const auto h = models::anharmonic_hamiltonian();
  const auto odd = models::anharmonic_family(models::Parity::Odd, models::AnharmonicBasis::Gn);
  const auto even = frozen_state(WaveFunction(PolyExp(Polynomial::constant(1, 1.0), IsoGaussian{1.0, 1})), h, {1.0});
  const double w[] = {1.4};
  const auto o = orthogonalize_m2(1, w, odd, {even});
  EXPECT_EQ(o.coeffs[0], 0.0);
}

TEST(Orthogonalize, Method2MatchesLinearSystem) {
  // With mutually orthogonal frozen states the Method-1 style solve against the frozen
  // states reduces to the closed-form coefficients.
  const auto h = models::anharmonic_hamiltonian();
  const auto fam = models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn2);
  SolverConfig cfg;
  cfg.method = Method::Method2;
  const auto tower = solve_tower(3, h, fam, cfg);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.5, 2.5);
  for (int k = 0; k < 5; ++k) {
    const double w[] = {u(rng), 0.1 * u(rng)};
    const auto o = orthogonalize_m2(3, w, fam, tower, cfg);
    const WaveFunction f = fam.basis(3, w);
    for (std::size_t j = 0; j < 3; ++j) {
      // Row j of the system: sum_l c_l <psi_j, psi_l> = -<psi_j, f>, diagonal here.
      double lhs = 0.0;
      for (std::size_t l = 0; l < 3; ++l) lhs += o.coeffs[l] * inner_product(tower[j].state, tower[l].state);
      const double rhs = -inner_product(tower[j].state, f);
      EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST(SolveLevel, HarmonicExactMember) {
  const auto fam = models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn);
  const auto est = solve_level(0, harmonic(), fam, {}, SolverConfig{});
  EXPECT_NEAR(est.energy, 1.0, 1e-8);
  EXPECT_LT(est.residual, 1e-6);
  EXPECT_NEAR(est.omega[0], 1.0, 1e-5);
}

TEST(SolveLevel, AnharmonicGroundStateGn) {
  const auto est = solve_level(0, models::anharmonic_hamiltonian(),
                               models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn), {}, SolverConfig{});
  EXPECT_NEAR(est.energy, 1.086, 1e-3);
  EXPECT_NEAR(est.omega[0], 1.54, 0.01);
  EXPECT_NEAR(est.residual * est.residual, variance_objective(est.state, models::anharmonic_hamiltonian()).r_sq, 1e-9);
}

TEST(SolveLevel, AnharmonicGroundStateGn2) {
  const auto est = solve_level(0, models::anharmonic_hamiltonian(),
                               models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn2), {}, SolverConfig{});
  EXPECT_NEAR(est.energy, 1.0604541, 1e-6);
  EXPECT_NEAR(est.residual, 0.05, 0.005);
  EXPECT_NEAR(est.omega[0], 1.10, 0.01);
  EXPECT_NEAR(est.omega[1], 0.29, 0.01);
}

TEST(SolveLevel, RayleighObjectiveLowersGroundEnergy) {
  SolverConfig r;
  r.objective = Objective::RayleighForGroundState;
  const auto fam = models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn);
  const auto h = models::anharmonic_hamiltonian();
  const auto a = solve_level(0, h, fam, {}, SolverConfig{});
  const auto b = solve_level(0, h, fam, {}, r);
  EXPECT_LT(b.energy, a.energy);
  EXPECT_GE(b.energy, 1.06036167);
  EXPECT_GT(b.residual, a.residual);
}

TEST(SolveLevel, WrongFrozenCountRejected) {
  const auto fam = models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn);
  EXPECT_THROW(solve_level(1, harmonic(), fam, {}, SolverConfig{}), DomainError);
}

TEST(SolveLevel, AllStartsInfeasible) {
  AnsatzFamily fam = models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn);
  fam.basis = [](std::size_t, std::span<const double>) -> WaveFunction { throw DomainError("never normalizable"); };
  EXPECT_THROW(solve_level(0, harmonic(), fam, {}, SolverConfig{}), SolverError);
}

TEST(SolveTower, SingleLevelEqualsSolveLevel) {
  const auto fam = models::anharmonic_family(models::Parity::Odd, models::AnharmonicBasis::Gn);
  const auto h = models::anharmonic_hamiltonian();
  const auto tower = solve_tower(1, h, fam, SolverConfig{});
  const auto single = solve_level(0, h, fam, {}, SolverConfig{});
  ASSERT_EQ(tower.size(), 1u);
  EXPECT_EQ(tower[0].energy, single.energy);
  EXPECT_EQ(tower[0].omega, single.omega);
}

TEST(SolveTower, ErrorsCarryLevel) {
  AnsatzFamily fam = models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn);
  const auto inner = fam.basis;
  fam.basis = [inner](std::size_t n, std::span<const double> w) -> WaveFunction {
    if (n == 1) throw DomainError("level one unavailable");
    return inner(n, w);
  };
  try {
    solve_tower(2, harmonic(), fam, SolverConfig{});
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_NE(std::string(e.what()).find("level 1"), std::string::npos);
  }
}

TEST(SolveTower, Deterministic) {
  const auto fam = models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn2);
  const auto h = models::anharmonic_hamiltonian();
  const auto a = solve_tower(3, h, fam, SolverConfig{});
  const auto b = solve_tower(3, h, fam, SolverConfig{});
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a[i].energy, b[i].energy);
    EXPECT_EQ(a[i].omega, b[i].omega);
  }
}

class TowerProperties : public ::testing::TestWithParam<Method> {};

TEST_P(TowerProperties, OrthogonalAndEnergyOptimal) {
  SolverConfig cfg;
  cfg.method = GetParam();
  const auto h = models::anharmonic_hamiltonian();
  const auto tower = solve_tower(4, h, models::anharmonic_family(models::Parity::Even, models::AnharmonicBasis::Gn), cfg);
  EXPECT_LT(max_relative_overlap(tower), 1e-8);
  for (const auto& e : tower) {
    EXPECT_EQ(e.coeffs.size(), e.level);
    const double base = residual_sq(e.state, h, e.energy);
    EXPECT_NEAR(base, e.residual * e.residual, 1e-9 * std::max(1.0, base));
    EXPECT_GT(residual_sq(e.state, h, e.energy + 1e-3), base);
    EXPECT_GT(residual_sq(e.state, h, e.energy - 1e-3), base);
  }
}

INSTANTIATE_TEST_SUITE_P(Methods, TowerProperties, ::testing::Values(Method::Method1, Method::Method2));

TEST(ErrorBound, Examples) {
  SpectrumEstimate e;
  e.energy = 1.086;
  e.residual = 0.5;
  EXPECT_TRUE(error_bound_check(e, 1.06036167));
  e.energy = 21.236251;
  e.residual = 0.14;
  EXPECT_TRUE(error_bound_check(e, 21.2383729));
  e.energy = 2.0;
  e.residual = 0.0;
  EXPECT_TRUE(error_bound_check(e, 2.0));
  EXPECT_FALSE(error_bound_check(e, 2.0 + 1e-12));
}
