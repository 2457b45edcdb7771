#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gsol/curvature.hpp"
#include "gsol/errors.hpp"
#include "support.hpp"

using namespace gsol;

namespace {

const SolitonSolution& two_family() {
  static const SolitonSolution s = balance(test::soliton(2, 2.0, {0, 1}));
  return s;
}

const SolitonSolution& three_family() {
  static const SolitonSolution s = balance(test::soliton(3, 1.0, test::kE1E2E1E3));
  return s;
}

double alpha_far_constant(const SolitonSolution& s) {
  const double n = static_cast<double>(s.n());
  const double rho = 100.0 * s.period();
  return s.alpha()(rho, 0.0) - (1.0 - n) / (2.0 * n) * std::log(rho);
}

}  // namespace

double closed_vs_fd(const SolitonSolution& s, double rho, double z, double h) {
  const CurvatureFrame f = curvature_components(s, rho, z);
  const FdCurvature fd = fd_slice_curvature(s, rho, z, h);
  const std::size_t D = s.n() + 2;
  EXPECT_EQ(fd.dim, D);
  double worst = 0.0;
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b)
      for (std::size_t c = 0; c < D; ++c)
        for (std::size_t d = 0; d < D; ++d) {
          // orthonormal-frame components
          const double scale =
              std::sqrt(f.metric_diagonal[a] * f.metric_diagonal[b] * f.metric_diagonal[c] * f.metric_diagonal[d]);
          worst = std::max(worst, std::abs(f.R(a, b, c, d) - fd.R(a, b, c, d)) / scale);
        }
  return worst;
}

TEST(Curvature, ClosedFormsMatchFiniteDifferences) {
  for (const SolitonSolution* s : {&two_family(), &three_family()}) {
    const double L = s->period();
    for (auto [r, z] : std::vector<std::pair<double, double>>{{0.3, 0.17}, {0.75, 0.41}, {1.5, 0.2}}) {
      const double e1 = closed_vs_fd(*s, r * L, z * L, 1e-3);
      const double e2 = closed_vs_fd(*s, r * L, z * L, 5e-4);
      EXPECT_LT(e1, 1e-4);
      // second-order convergence until rounding takes over
      EXPECT_LT(e2, std::max(e1 / 3.0, 1e-8));
    }
  }
}

TEST(Curvature, LaplacianOfAlpha) {
  const auto& s = three_family();
  for (auto [rho, z] : std::vector<std::pair<double, double>>{{0.2, 0.3}, {0.9, 0.55}}) {
    const Hessian H = s.alpha().hessian(rho, z);
    EXPECT_NEAR(curvature_components(s, rho, z).laplace_alpha, H.rr + H.zz, 1e-9);
  }
}

TEST(Curvature, RicciFlatAtRandomPoints) {
  std::mt19937_64 rng(2024);
  for (const SolitonSolution* s : {&two_family(), &three_family()}) {
    const double L = s->period();
    std::uniform_real_distribution<double> R(0.1 * L, 2.0 * L), Z(0.0, L);
    for (int k = 0; k < 10; ++k) {
      const double rho = R(rng), z = Z(rng);
      EXPECT_LT(ricci_residual(*s, rho, z, 1e-3), 1e-4) << rho << " " << z;
    }
  }
}

TEST(Curvature, RicciResidualIsSecondOrder) {
  const auto& s = two_family();
  const double r1 = ricci_residual(s, 1.5, 0.4, 2e-3);
  const double r2 = ricci_residual(s, 1.5, 0.4, 1e-3);
  EXPECT_LT(r2, 1e-4);
  ASSERT_GT(r2, 1e-11);
  EXPECT_NEAR(std::log2(r1 / r2), 2.0, 0.3);
}

TEST(Curvature, PerturbedConformalFactorIsDetected) {
  const auto& s = two_family();
  const double clean = ricci_residual(s, 1.5, 0.4, 1e-3);
  const double dirty = ricci_residual(s, 1.5, 0.4, 1e-3, [](double rho, double) { return 0.01 * rho * std::exp(-rho); });
  EXPECT_GT(dirty, 100.0 * clean);
  EXPECT_GT(dirty, 1e-4);
}

TEST(Curvature, FlatSingleRod) {
  const auto s0 = test::basic(1, 1.0);
  const auto s = s0.with_constants({0.0}, s0.lapse_constant() / 2.0);
  const CurvatureFrame f = curvature_components(s, 0.7, 0.3);
  EXPECT_NEAR(f.laplace_alpha, 0.0, 1e-14);
  EXPECT_NEAR(f.f1[0], 0.0, 1e-14);
  EXPECT_NEAR(f.f2[0], 0.0, 1e-14);
  EXPECT_NEAR(f.f3[0], 0.0, 1e-14);
  for (const auto& e : curvature_endomorphisms(f)) {
    for (double x : e.matrix.data) EXPECT_NEAR(x, 0.0, 1e-14);
  }
  EXPECT_EQ(holonomy_rank(s, 20.0, 0.3).rank, 0);
  EXPECT_LT(ricci_residual(s, 0.7, 0.3, 1e-3), 1e-8);  // rounding only
  const MetricFrame m = metric_at(s, 0.7, 0.3);
  EXPECT_NEAR(m.torus[0], 0.7 * 0.7 * std::exp(s.lapse_constant()), 1e-14);
}

TEST(Curvature, EndomorphismsAreSkew) {
  const auto& s = three_family();
  const CurvatureFrame f = curvature_components(s, 0.8, 0.3);
  const auto list = curvature_endomorphisms(f);
  EXPECT_EQ(list.size(), 10u);
  for (const auto& e : list) {
    for (std::size_t a = 0; a < e.matrix.dim; ++a)
      for (std::size_t b = 0; b < e.matrix.dim; ++b) {
        EXPECT_NEAR(e.matrix(a, b), -e.matrix(b, a), 1e-12);
        EXPECT_NEAR(e.matrix(a, b), f.R(a, b, e.x, e.y), 1e-15);
      }
  }
}

TEST(Holonomy, GenericRankInTheFarField) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto s = balance(test::basic(n, 1.0));
    const HolonomyRank h = holonomy_rank(s, 20.0, 0.3);
    EXPECT_EQ(h.dimension, static_cast<int>((n + 2) * (n + 1) / 2));
    EXPECT_EQ(h.rank, h.dimension) << n;
  }
}

TEST(Holonomy, DroppingAGeneratorLowersTheRank) {
  const auto& s = two_family();
  const CurvatureFrame f = curvature_components(s, 40.0, 0.6);
  auto list = curvature_endomorphisms(f);
  list.pop_back();
  list.push_back(list.front());
  EXPECT_EQ(holonomy_rank(list, f.metric_diagonal).rank, 5);
}

TEST(AsymptoticLaws, ConstantsRestored) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto s = balance(test::basic(n, 1.0));
    const double L = s.period(), nn = static_cast<double>(n);
    const double ca = alpha_far_constant(s);
    std::array<double, 2> worst{};
    for (int k = 0; k < 2; ++k) {
      const double rho = (k == 0 ? 20.0 : 50.0) * L;
      const CurvatureFrame f = curvature_components(s, rho, 0.3 * L);
      double w = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double ci = s.potentials().far_constant(i);
        const double det = (nn - 1) * (nn - 1) / (4 * std::pow(nn, 4)) * std::exp(2 * ci) * std::pow(rho, 4 / nn - 4);
        w = std::max(w, std::abs(f.determinant(i) / det - 1));
        for (std::size_t j = i + 1; j < n; ++j) {
          const double cj = s.potentials().far_constant(j);
          const double g = -std::exp(ci + cj - 2 * ca) * std::pow(rho, 3 / nn - 1) / (nn * nn);
          w = std::max(w, std::abs(f.g[i][j] / g - 1));
        }
      }
      w = std::max(w, std::abs(f.laplace_alpha / ((nn - 1) / (2 * nn) / (rho * rho)) - 1));
      worst[k] = w;
    }
    EXPECT_LT(worst[0], 0.1);
    EXPECT_LE(worst[1], worst[0] + 1e-9);
  }
}

TEST(Flux, UnitRodGivesPi) {
  const auto s = test::soliton(2, 2.0, {0, 1});
  EXPECT_NEAR(std::exp(0.5 * s.lapse_constant()), 0.25, 1e-15);
  for (std::size_t rod = 0; rod < 2; ++rod) {
    EXPECT_NEAR(homology_flux(s, rod, rod, 2.0, ContourKind::enclosing), std::numbers::pi, 1e-6);
    EXPECT_THROW(homology_flux(s, rod, rod, 2.0, ContourKind::inset), InputError);
    EXPECT_NEAR(expected_flux(s, rod), std::numbers::pi, 1e-12);
  }
  EXPECT_NEAR(homology_flux(s, 0, 0, 7.0, ContourKind::enclosing), std::numbers::pi, 1e-6);
}

TEST(Flux, CrossFamilyVanishes) {
  const auto s = test::soliton(3, 1.0, test::kE1E2E1E3);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      if (s.diagram().family_of(a) == s.diagram().family_of(b)) continue;
      EXPECT_NEAR(homology_flux(s, a, b, 1.0, ContourKind::inset), 0.0, 1e-8);
    }
  }
  EXPECT_THROW(homology_flux(s, 0, 1, 1.0, ContourKind::enclosing), InputError);
}

TEST(Flux, LinearInRodLength) {
  const auto s = test::soliton(3, 1.0, test::kE1E2E1E3, {Fraction(1, 5), Fraction(2, 5), Fraction(1, 5), Fraction(1, 5)});
  const double per_length = homology_flux(s, 1, 1, 1.0, ContourKind::enclosing) / s.diagram().length(1);
  for (std::size_t rod = 0; rod < 4; ++rod) {
    const double f = homology_flux(s, rod, rod, 1.0, ContourKind::enclosing);
    EXPECT_NEAR(f / s.diagram().length(rod), per_length, 1e-6);
    EXPECT_NEAR(f, expected_flux(s, rod), 1e-6);
  }
}
