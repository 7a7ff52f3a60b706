#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "varspec/error.hpp"
#include "varspec/models.hpp"

using namespace varspec;
using namespace varspec::models;

TEST(Anharmonic, EvenGnLevelZero) {
  const auto fam = anharmonic_family(Parity::Even, AnharmonicBasis::Gn);
  const double w[] = {2.0};
  const auto f = fam.basis(0, w);
  for (double x : {-1.3, 0.0, 0.4, 2.2}) {
    const double p[] = {x};
    EXPECT_NEAR(f.evaluate(p), std::exp(-x * x), 1e-15);
  }
}

TEST(Anharmonic, OddGnLevelOne) {
  const auto fam = anharmonic_family(Parity::Odd, AnharmonicBasis::Gn);
  const double w[] = {1.7};
  const auto f = fam.basis(1, w);
  ASSERT_EQ(f.terms().size(), 1u);
  EXPECT_EQ(f.terms()[0].poly, Polynomial::monomial({3}));
  EXPECT_EQ(f.terms()[0].kernel, ExpKernel(IsoGaussian{1.7, 1}));
}

TEST(Anharmonic, EvenGn2LevelOne) {
  const auto fam = anharmonic_family(Parity::Even, AnharmonicBasis::Gn2);
  const double w[] = {1.1, 0.3};
  const auto f = fam.basis(1, w);
  EXPECT_EQ(f.terms()[0].poly, Polynomial::monomial({2}));
  EXPECT_EQ(f.terms()[0].kernel, ExpKernel(Quartic1D{1.1, 0.3}));
}

TEST(X2Y2, SymmetricCollapse) {
  const double w[] = {0.6, 0.6, 0.0};
  const auto rho = x2y2_density(w);
  ASSERT_EQ(rho.terms().size(), 1u);
  const double p[] = {0.3, -1.1};
  EXPECT_NEAR(rho.evaluate(p), 2 * std::exp(-0.6 * (0.09 + 1.21)), 1e-15);
}

TEST(X2Y2, DensitySymmetricUnderSwap) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  const double w[] = {0.385, 0.19, 0.126};
  const auto rho = x2y2_density(w);
  for (int k = 0; k < 100; ++k) {
    const double a = u(rng), b = u(rng);
    const double p[] = {a, b}, q[] = {b, a};
    EXPECT_DOUBLE_EQ(rho.evaluate(p), rho.evaluate(q));
  }
}

TEST(X2Y2, DensityRejectsZeroParameters) {
  const double w[] = {0.0, 0.0, 0.0};
  EXPECT_THROW(x2y2_density(w), DomainError);
}

TEST(X2Y2, PublishedGroundDensity) {
  const double w[] = {0.385, 0.190, 0.126};
  const auto v = variance_objective(x2y2_density(w), x2y2_hamiltonian());
  EXPECT_NEAR(v.energy, 1.109, 1e-3);
  EXPECT_NEAR(std::sqrt(v.r_sq), 0.09, 0.005);
}

TEST(X2Y2, EeeLevelZeroIsDensity) {
  const auto fam = x2y2_family(X2Y2Sector::EEE, engine::Method::Method1);
  const double w[] = {0.3, 0.5, 0.1};
  const auto f = fam.basis(0, w);
  const auto rho = x2y2_density(w);
  const double p[] = {0.7, -0.2};
  EXPECT_EQ(f.evaluate(p), rho.evaluate(p));
}

TEST(X2Y2, SectorParities) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2, 2);
  const double w[] = {0.2, 0.9, 0.07};
  for (auto sector : {X2Y2Sector::EEE, X2Y2Sector::EEO}) {
    const auto fam = x2y2_family(sector, engine::Method::Method2);
    const double sign = sector == X2Y2Sector::EEE ? 1.0 : -1.0;
    for (std::size_t n = 0; n < 3; ++n) {
      const auto f = fam.basis(n, w);
      for (int k = 0; k < 100; ++k) {
        const double a = u(rng), b = u(rng);
        const double p[] = {a, b}, swapped[] = {b, a}, mx[] = {-a, b}, my[] = {a, -b};
        EXPECT_NEAR(f.evaluate(swapped), sign * f.evaluate(p), 1e-12 * (1 + std::abs(f.evaluate(p))));
        EXPECT_DOUBLE_EQ(f.evaluate(mx), f.evaluate(p));
        EXPECT_DOUBLE_EQ(f.evaluate(my), f.evaluate(p));
      }
    }
  }
}

TEST(X2Y2, UnsupportedSectorsRejected) {
  EXPECT_THROW(x2y2_family(X2Y2Sector::OOE, engine::Method::Method1), DomainError);
  EXPECT_THROW(x2y2_family(X2Y2Sector::EOminusOE, engine::Method::Method2), DomainError);
  EXPECT_THROW(parse_x2y2_sector("XYZ"), DomainError);
}

TEST(SU2, PotentialExamples) {
  const auto v = su2_potential(2);
  EXPECT_EQ(v.dim(), 6u);
  const double perpendicular[] = {1, 0, 0, 0, 1, 0};
  EXPECT_DOUBLE_EQ(v.evaluate(perpendicular), 1.0);
  const double collinear[] = {1, 2, -1, -2, -4, 2};
  EXPECT_DOUBLE_EQ(v.evaluate(collinear), 0.0);
  EXPECT_EQ(v.degree(), 4);
}

TEST(SU2, PotentialMatchesCrossProducts) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0, 1.5);
  for (int d : {2, 3, 4}) {
    const auto v = su2_potential(d);
    for (int k = 0; k < 1000; ++k) {
      std::vector<double> q(3 * d);
      for (auto& x : q) x = n(rng);
      double direct = 0.0;
      for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
          const double* a = &q[3 * i];
          const double* b = &q[3 * j];
          const double c0 = a[1] * b[2] - a[2] * b[1], c1 = a[2] * b[0] - a[0] * b[2], c2 = a[0] * b[1] - a[1] * b[0];
          direct += c0 * c0 + c1 * c1 + c2 * c2;
        }
      }
      const double got = v.evaluate(q);
      EXPECT_GE(got, -1e-12);
      EXPECT_NEAR(got, direct, 1e-10 * std::max(1.0, direct));
    }
  }
}

TEST(SU2, FamilyRejectsSmallD) { EXPECT_THROW(su2_family(1), DomainError); }

TEST(SU2Analytic, FreeTheory) {
  for (double w : {0.5, 1.0, 2.0}) {
    const auto m = su2_analytic(1, w);
    EXPECT_DOUBLE_EQ(m.h_mean, 1.5 * w);
    EXPECT_NEAR(m.r_sq, 1.5 * w * w, 1e-14);
  }
}

TEST(SU2Analytic, KnownValueAndIdentity) {
  EXPECT_NEAR(su2_analytic(2, 1.128).h_mean, 4.57, 0.01);
  for (int d : {1, 2, 3, 7, 50}) {
    for (double w : {0.3, 1.0, 1.9, 4.0}) {
      const auto m = su2_analytic(d, w);
      EXPECT_NEAR(m.h2_mean - m.h_mean * m.h_mean - m.r_sq, 0.0, 1e-10 * std::max(1.0, m.h2_mean));
    }
  }
  EXPECT_THROW(su2_analytic(2, 0.0), DomainError);
}

TEST(SU2Analytic, SymbolicCrossValidationD2) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  const auto h = su2_hamiltonian(2);
  const auto fam = su2_family(2);
  for (int k = 0; k < 10; ++k) {
    const double w[] = {u(rng)};
    const auto v = variance_objective(fam.basis(0, w), h);
    const auto m = su2_analytic(2, w[0]);
    EXPECT_NEAR(v.energy, m.h_mean, 1e-8 * m.h_mean);
    EXPECT_NEAR(v.r_sq, m.r_sq, 1e-8 * std::max(1.0, m.h2_mean));
  }
}

TEST(SU2Ground, ClosedForm) {
  const auto g = su2_ground_closed_form(2);
  EXPECT_NEAR(g.omega_min, 1.128, 5e-4);
  EXPECT_NEAR(g.e0, 4.57, 0.01);
  EXPECT_NEAR(std::sqrt(g.r0_sq), 1.32, 0.005);
  EXPECT_NEAR(g.e0 * su2_rescale(2), 1.81, 0.005);
  EXPECT_NEAR(std::sqrt(g.r0_sq) * su2_rescale(2), 0.524, 5e-4);
  const auto g300 = su2_ground_closed_form(300);
  EXPECT_NEAR(g300.e0 * su2_rescale(300), 2.25, 0.005);
  EXPECT_NEAR(std::sqrt(g300.r0_sq) * su2_rescale(300), 0.004, 5e-4);
}

TEST(SU2Ground, MinimizerAndCharacteristicEquation) {
  for (int d : {2, 3, 4, 10, 100, 300}) {
    const auto g = su2_ground_closed_form(d);
    EXPECT_LT(std::abs(g.characteristic_residual), 1e-9 * 4.0 * d * d);
    const auto m = su2_analytic(d, g.omega_min);
    EXPECT_NEAR(m.h_mean, g.e0, 1e-10 * g.e0);
    EXPECT_NEAR(m.r_sq, g.r0_sq, 1e-9 * std::max(1.0, m.h2_mean));
    for (double f : {0.99, 0.999, 1.001, 1.01}) EXPECT_GT(su2_analytic(d, g.omega_min * f).r_sq, m.r_sq);
  }
}

TEST(SU2Asymptotics, EnergyAndFrequencyRatiosApproachOne) {
  const auto g = su2_ground_closed_form(10000);
  const auto a = su2_large_d_asymptotics(10000);
  EXPECT_NEAR(g.e0 / a.e0_asym, 1.0, 0.01);
  EXPECT_NEAR(g.omega_min / a.omega_asym, 1.0, 0.01);
  EXPECT_NEAR(su2_ground_closed_form(100).e0 * su2_rescale(100), 2.24, 0.005);
  const double d = 37;
  EXPECT_NEAR(su2_large_d_asymptotics(d).r0_sq_asym * std::pow(su2_rescale(d), 2), 2.25 / (d * d), 1e-15);
}

// The closed form expands to (9/8) d^{2/3}(1 + O(1/d)), half the stated asymptote.
TEST(SU2Asymptotics, ErrorSquaredLeadingCoefficient) {
  double prev = 0;
  for (int d : {100, 1000, 10000, 100000}) {
    const double c = su2_ground_closed_form(d).r0_sq / std::pow(d, 2.0 / 3.0);
    EXPECT_NEAR(c, 9.0 / 8.0, 2.0 / d);
    if (prev > 0) EXPECT_LT(std::abs(c - 1.125), std::abs(prev - 1.125));
    prev = c;
  }
}

TEST(SU2Excited, ClosedFormValues) {
  const auto e2 = su2_excited_closed_form(2);
  EXPECT_NEAR(e2.e1, 3.64, 0.005);
  EXPECT_NEAR(e2.e1 / su2_rescale(2), 9.17, 0.01);
  EXPECT_NEAR(su2_excited_closed_form(100).e1, 2.29, 0.005);
  for (int d : {2, 3, 4, 10, 100, 300}) {
    EXPECT_GT(su2_excited_closed_form(d).e1, su2_ground_closed_form(d).e0 * su2_rescale(d));
  }
}

TEST(SU2Excited, ClosedFormMatchesSymbolicD2) {
  const auto h = su2_hamiltonian(2, true);
  const auto fam = su2_family(2);
  const double w0 = su2_ground_closed_form(2).omega_min;
  engine::SpectrumEstimate ground;
  const double wa[] = {w0};
  ground.state = fam.basis(0, wa);
  ground.h_state = apply_hamiltonian(h, ground.state);
  ground.norm_sq = inner_product(ground.state, ground.state);
  for (double w1 : {0.8, 1.14, 1.6, 2.5}) {
    const double wb[] = {w1};
    engine::SolverConfig cfg;
    cfg.method = engine::Method::Method2;
    const auto o = engine::orthogonalize_m2(1, wb, fam, {ground}, cfg);
    EXPECT_NEAR(rayleigh(o.state, h), su2_excited_rayleigh(2, w1), 1e-9 * su2_excited_rayleigh(2, w1));
  }
}
