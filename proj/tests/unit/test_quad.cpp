#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "varspec/error.hpp"
#include "varspec/quad.hpp"

using namespace varspec;
using namespace varspec::quad;

TEST(GaussLegendre, OnePointRule) {
  const auto r = gauss_legendre(1);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r.nodes[0], 0.0, 1e-15);
  EXPECT_NEAR(r.weights[0], 2.0, 1e-15);
}

TEST(GaussLegendre, TwoPointRule) {
  const auto r = gauss_legendre(2);
  EXPECT_NEAR(r.nodes[0], -1.0 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(r.nodes[1], 1.0 / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(r.weights[0], 1.0, 1e-14);
  EXPECT_NEAR(r.weights[1], 1.0, 1e-14);
}

TEST(GaussLegendre, SixthPowerWithFourPoints) {
  EXPECT_NEAR(gauss_legendre(4).apply([](double x) { return std::pow(x, 6); }), 2.0 / 7.0, 1e-14);
}

TEST(GaussLegendre, ExactUpToDegree2nMinus1) {
  for (int n = 1; n <= 40; n += 3) {
    const auto r = gauss_legendre(n);
    for (double w : r.weights) EXPECT_GT(w, 0.0);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      const double exact = p % 2 == 1 ? 0.0 : 2.0 / (p + 1);
      EXPECT_NEAR(r.apply([p](double x) { return std::pow(x, p); }), exact, 1e-12) << "n=" << n << " p=" << p;
    }
  }
}

TEST(GaussLaguerre, Examples) {
  EXPECT_NEAR(gauss_laguerre(1).apply([](double) { return 1.0; }), 1.0, 1e-15);
  EXPECT_NEAR(gauss_laguerre(3).apply([](double r) { return std::pow(r, 5); }), 120.0, 1e-12 * 120);
  EXPECT_NEAR(gauss_laguerre(5).apply([](double r) { return std::pow(r, 9); }), 362880.0, 1e-10 * 362880);
}

TEST(GaussLaguerre, ExactUpToDegree2nMinus1) {
  for (int n = 1; n <= 30; n += 4) {
    const auto r = gauss_laguerre(n);
    for (double w : r.weights) EXPECT_GT(w, 0.0);
    double factorial = 1.0;
    for (int p = 0; p <= 2 * n - 1; ++p) {
      if (p > 0) factorial *= p;
      EXPECT_NEAR(r.apply([p](double x) { return std::pow(x, p); }) / factorial, 1.0, 1e-11) << "n=" << n << " p=" << p;
    }
  }
}

TEST(GaussRules, RejectNonPositiveOrder) {
  EXPECT_THROW(gauss_legendre(0), DomainError);
  EXPECT_THROW(gauss_laguerre(-3), DomainError);
}

TEST(Integrate1d, GaussianOnRealLine) {
  const auto r = integrate_1d([](double x) { return std::exp(-x * x); }, Domain::RealLine, 1e-10);
  EXPECT_NEAR(r.value, std::sqrt(std::numbers::pi), 1e-10);
  EXPECT_LE(r.error, 1e-10 * (1 + r.value));
}

TEST(Integrate1d, QuarticWeightAgainstTrapezoid) {
  auto f = [](double x) { return x * x * std::exp(-x * x / 2 - x * x * x * x / 4); };
  const double ref = oracle::trapezoid(f, -12.0, 12.0, 1000000);
  EXPECT_NEAR(integrate_1d(f, Domain::RealLine, 1e-10).value, ref, 1e-8);
}

TEST(Integrate1d, OddIntegrandVanishes) {
  const auto r = integrate_1d([](double x) { return x * x * x * std::exp(-x * x); }, Domain::RealLine, 1e-10);
  EXPECT_NEAR(r.value, 0.0, 1e-10);
}

TEST(Integrate1d, HalfLine) {
  const auto r = integrate_1d([](double x) { return std::exp(-x); }, Domain::HalfLine, 1e-12);
  EXPECT_NEAR(r.value, 1.0, 1e-11);
}

TEST(Integrate1d, Deterministic) {
  auto f = [](double x) { return std::cos(x) * std::exp(-0.3 * x * x); };
  const double a = integrate_1d(f, Domain::RealLine).value;
  const double b = integrate_1d(f, Domain::RealLine).value;
  EXPECT_EQ(a, b);
}

TEST(Integrate1d, BudgetExhaustionReportsBestEstimate) {
  // Slowly decaying integrand cannot meet an absurd tolerance.
  auto f = [](double x) { return 1.0 / (1.0 + x * x); };
  try {
    integrate_1d(f, Domain::RealLine, 1e-300);
    FAIL() << "expected IntegrationError";
  } catch (const IntegrationError& e) {
    EXPECT_NEAR(e.best_estimate(), std::numbers::pi, 1e-6);
    EXPECT_GT(e.achieved_error(), 0.0);
  }
}

TEST(IntegrateVector, MatchesScalar) {
  auto v = integrate_half_line_vector(
      [](double x, std::span<double> out) {
        out[0] = std::exp(-x * x);
        out[1] = x * x * std::exp(-x * x);
      },
      2);
  EXPECT_NEAR(v[0], std::sqrt(std::numbers::pi) / 2, 1e-11);
  EXPECT_NEAR(v[1], std::sqrt(std::numbers::pi) / 4, 1e-11);
}
