#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gsol/errors.hpp"
#include "gsol/quadrature.hpp"
#include "support.hpp"

using namespace gsol;

namespace {

double period_shift(const SolitonSolution& s, double rho, double z) {
  const double L = s.period();
  return std::abs(s.alpha()(rho, z + L) - s.alpha()(rho, z));
}

std::vector<SolitonSolution> symmetric_family() {
  return {
      test::soliton(2, 2.0, {0, 1}),
      test::soliton(3, 1.0, {0, 1, 2}),
      test::soliton(3, 1.0, test::kE1E2E1E3),
      test::soliton(4, 1.0, test::kE1E2E1E3E4),
      // one rod longer than the others
      test::soliton(3, 1.0, {0, 1, 2}, {Fraction(2, 5), Fraction(3, 10), Fraction(3, 10)}),
      test::soliton(3, 1.0, test::kE1E2E1E3, {Fraction(1, 5), Fraction(2, 5), Fraction(1, 5), Fraction(1, 5)}),
  };
}

}  // namespace

TEST(GaussKronrod, SmoothIntegrals) {
  EXPECT_NEAR(integrate_gk15([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-13).value, 2.0, 1e-13);
  EXPECT_NEAR(integrate_gk15([](double x) { return std::exp(-x * x); }, -5.0, 5.0, 1e-13).value,
              std::sqrt(std::numbers::pi) * std::erf(5.0), 1e-13);
  EXPECT_EQ(integrate_gk15([](double) { return 1.0; }, 2.0, 2.0, 1e-12).value, 0.0);
  EXPECT_NEAR(integrate_gk15([](double x) { return x * x; }, 1.0, 0.0, 1e-13).value, -1.0 / 3.0, 1e-14);
}

TEST(GaussKronrod, EndpointSingularities) {
  const auto r = integrate_gk15([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-11);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-11);
  EXPECT_GT(r.intervals, 1);
  EXPECT_NEAR(integrate_gk15([](double x) { return std::log(x); }, 0.0, 1.0, 1e-10).value, -1.0, 1e-10);
}

TEST(GaussKronrod, BudgetExhaustionThrows) {
  EXPECT_THROW(integrate_gk15([](double x) { return std::sin(400.0 * x); }, 0.0, 10.0, 1e-14, 3), AccuracyError);
}

TEST(Alpha, IntegrandMatchesDerivatives) {
  const auto s = test::soliton(3, 1.0, test::kE1E2E1E3);
  const AlphaField& a = s.alpha();
  const double h = 1e-5;
  for (auto [rho, z] : std::vector<std::pair<double, double>>{{0.2, 0.1}, {0.6, 0.55}, {1.3, 0.8}}) {
    const Gradient g = a.integrand(rho, z);
    EXPECT_NEAR(g.rho, (a(rho + h, z) - a(rho - h, z)) / (2 * h), 1e-7);
    EXPECT_NEAR(g.z, (a(rho, z + h) - a(rho, z - h)) / (2 * h), 1e-7);
    const Hessian H = a.hessian(rho, z);
    EXPECT_NEAR(H.rr, (a.integrand(rho + h, z).rho - a.integrand(rho - h, z).rho) / (2 * h), 1e-6);
    EXPECT_NEAR(H.rz, (a.integrand(rho, z + h).rho - a.integrand(rho, z - h).rho) / (2 * h), 1e-6);
    EXPECT_NEAR(H.rz, (a.integrand(rho + h, z).z - a.integrand(rho - h, z).z) / (2 * h), 1e-6);
    EXPECT_NEAR(H.zz, (a.integrand(rho, z + h).z - a.integrand(rho, z - h).z) / (2 * h), 1e-6);
  }
}

TEST(Alpha, Integrable) {
  const auto s = test::soliton(2, 2.0, {0, 1});
  EXPECT_LT(integrability_residual(s.alpha(), 1.2, 0.3, 1e-3), 1e-5);
  // a rotational field is not a gradient
  auto curl = [](double rho, double z) { return Gradient{-z, rho}; };
  EXPECT_NEAR(integrability_residual(curl, 1.2, 0.3, 1e-3), 2.0, 1e-9);
}

TEST(Alpha, PathIndependent) {
  std::mt19937_64 rng(11);
  for (const auto& s : symmetric_family()) {
    const double L = s.period();
    std::uniform_real_distribution<double> R(0.05 * L, 2.0 * L), Z(-0.5 * L, 1.5 * L);
    for (int k = 0; k < 3; ++k) {
      const double rho = R(rng), z = Z(rng);
      const double a = s.alpha().at(rho, z, PathKind::axial_first);
      EXPECT_NEAR(a, s.alpha().at(rho, z, PathKind::radial_first), 1e-8);
      std::vector<Point> zigzag{s.alpha().base()};
      for (int j = 0; j < 4; ++j) zigzag.push_back({R(rng), Z(rng)});
      zigzag.push_back({rho, z});
      EXPECT_NEAR(a, integrate_alpha(s.alpha(), zigzag), 1e-8);
    }
  }
}

TEST(Alpha, Periodic) {
  for (const auto& s : symmetric_family()) {
    const double L = s.period();
    EXPECT_LT(periodicity_defect(s.alpha(), L), 1e-8);
    for (double rho : {0.1, 1.0, 3.0}) {
      EXPECT_LT(period_shift(s, rho * L, 0.37 * L), 1e-8) << s.diagram().size() << " rods, rho " << rho;
      EXPECT_LT(std::abs(periodicity_defect(s.alpha(), rho * L)), 1e-8);
    }
  }
}

TEST(Alpha, AsymmetricDiagramIsStillPeriodic) {
  // d/drho of the period integral of rho u_rho u_z vanishes for harmonic u and
  // the integral decays with rho, so no symmetry is needed.
  const auto s = test::soliton(3, 1.0, {0, 1, 2}, {Fraction(1, 7), Fraction(2, 7), Fraction(4, 7)});
  for (double rho : {0.05, 0.3, 1.0, 4.0}) EXPECT_LT(std::abs(periodicity_defect(s.alpha(), rho)), 1e-9);
  EXPECT_LT(period_shift(s, 0.2, 0.1), 1e-8);
}

TEST(Alpha, FlatSingleRod) {
  SolitonSolution s(RodDiagram::basic(1, 1.0), {}, {.alpha0 = 0.25});
  for (auto [rho, z] : std::vector<std::pair<double, double>>{{0.1, 0.0}, {2.0, 0.7}, {30.0, -4.0}}) {
    EXPECT_NEAR(s.alpha()(rho, z), 0.25, 1e-14);
  }
}

TEST(Alpha, AxisLimitExists) {
  const auto s = test::soliton(2, 2.0, {0, 1});
  for (std::size_t rod = 0; rod < 2; ++rod) {
    const double z = s.diagram().midpoint(rod);
    const auto lim = alpha_axis_limit(s.alpha(), rod, z);
    EXPECT_LT(lim.error, 1e-7);
    EXPECT_NEAR(lim.value, s.alpha()(1e-4, z), 1e-6);
  }
}

TEST(Alpha, FarFieldSlope) {
  for (std::size_t n : {2u, 3u}) {
    const auto s = test::basic(n, 1.0);
    const double a1 = s.alpha()(50.0, 0.0), a2 = s.alpha()(100.0, 0.0);
    EXPECT_NEAR((a2 - a1) / std::log(2.0), (1.0 - n) / (2.0 * n), 1e-9);
  }
}

TEST(Alpha, ConstantShift) {
  const auto s = test::soliton(2, 1.0, {0, 1});
  const AlphaField shifted = s.alpha().with_alpha0(1.5);
  EXPECT_NEAR(shifted(0.4, 0.3) - s.alpha()(0.4, 0.3), 1.5, 1e-14);
  EXPECT_NEAR(s.alpha()(s.alpha().base().rho, s.alpha().base().z), 0.0, 1e-15);
}
