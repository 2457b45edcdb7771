#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gsol/errors.hpp"
#include "gsol/potentials.hpp"
#include "support.hpp"

using namespace gsol;

namespace {

PotentialSet potentials(std::size_t n, double L, const std::vector<std::size_t>& families, PotentialOptions o = {}) {
  return PotentialSet(RodDiagram::equal_rods(n, L, families), o);
}

// Symmetric image sum with the harmonic counterterm, extrapolated in the
// truncation order M (error ~ M^-2 before extrapolation).
double brute_force(const PotentialSet& p, std::size_t i, double rho, double z) {
  const RodDiagram& d = p.diagram();
  const double L = d.period;
  auto partial = [&](int M) {
    double s = 0.0, harmonic = 0.0;
    for (int k = M; k >= 1; --k) {
      for (std::size_t r = 0; r < d.size(); ++r) {
        if (d.family_of(r) != i) continue;
        s += green_log({d.start(r) + k * L, d.end(r) + k * L}, rho, z);
        s += green_log({d.start(r) - k * L, d.end(r) - k * L}, rho, z);
      }
      harmonic += 1.0 / k;
    }
    for (std::size_t r = 0; r < d.size(); ++r) {
      if (d.family_of(r) == i) s += green_log({d.start(r), d.end(r)}, rho, z);
    }
    return s + 2.0 * p.share(i) * (harmonic - std::numbers::egamma) + p.kappa()[i];
  };
  const double a = partial(2000), b = partial(4000);
  return (4.0 * b - a) / 3.0;
}

double grid_sum_error(std::size_t n, double L) {
  std::vector<std::size_t> fam(n);
  for (std::size_t i = 0; i < n; ++i) fam[i] = i;
  const auto p = potentials(n, L, fam);
  double worst = 0.0;
  for (int a = 0; a < 20; ++a) {
    for (int b = 0; b < 20; ++b) {
      const double rho = L * (0.1 + 1.9 * a / 19.0), z = L * b / 19.0;
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += renormalized_potential(p, i, rho, z);
      worst = std::max(worst, std::abs(s - 2.0 * std::log(rho) + 2.0 * std::log(2.0 * L)));
    }
  }
  return worst;
}

}  // namespace

TEST(Potentials, MatchesBruteForceImageSum) {
  const auto p = potentials(3, 2.0, test::kE1E2E1E3);
  const std::vector<std::pair<double, double>> pts{{0.05, 0.3}, {0.4, 1.1}, {0.9, 1.7}, {1.3, 0.2}, {2.5, 0.9}};
  for (auto [rho, z] : pts) {
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(renormalized_potential(p, i, rho, z), brute_force(p, i, rho, z), 1e-9) << i << " " << rho << " " << z;
    }
  }
}

TEST(Potentials, RoutesAgree) {
  const auto p = potentials(3, 1.0, {0, 1, 2});
  for (double rho : {0.25, 0.5, 0.8, 1.5}) {
    for (double z : {0.0, 0.17, 0.5, 0.93}) {
      for (std::size_t i = 0; i < 3; ++i) {
        const auto a = p.jet(i, rho, z, Route::direct);
        const auto b = p.jet(i, rho, z, Route::cylindrical);
        EXPECT_NEAR(a.value, b.value, 1e-10);
        EXPECT_NEAR(a.grad.rho, b.grad.rho, 1e-9);
        EXPECT_NEAR(a.grad.z, b.grad.z, 1e-9);
        EXPECT_NEAR(a.hess.rr, b.hess.rr, 1e-8);
        EXPECT_NEAR(a.hess.zz, b.hess.zz, 1e-8);
      }
    }
  }
}

TEST(Potentials, SumIdentityOnGrid) {
  for (std::size_t n : {2u, 3u, 4u}) {
    for (double L : {1.0, 2.0}) EXPECT_LT(grid_sum_error(n, L), 1e-8) << n << " " << L;
  }
}

TEST(Potentials, SumIdentityNonEqualLengths) {
  const PotentialSet p(RodDiagram::from_families(3, 1.5, {0, 1, 0, 2},
                                                 {Fraction(1, 5), Fraction(2, 5), Fraction(1, 5), Fraction(1, 5)}));
  for (double rho : {0.01, 0.3, 2.0, 9.0}) {
    double s = 0.0;
    for (const auto& j : p.jets(rho, 0.41)) s += j.full_value(rho);
    EXPECT_NEAR(s, 2.0 * std::log(rho) + p.lapse_constant(), 1e-9);
  }
  EXPECT_NEAR(p.amplitude(0) + p.amplitude(1) + p.amplitude(2), 2.0, 1e-15);
}

TEST(Potentials, Harmonic) {
  const auto p = potentials(2, 2.0, {0, 1});
  EXPECT_LT(std::abs(laplacian_residual(p, 0, 1.0, 0.25, 1e-3)), 1e-5);
  const auto q = potentials(3, 1.0, {0, 1, 2});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(std::abs(laplacian_residual(q, i, 1.2, 0.3, 1e-3)), 1e-5);
}

TEST(Potentials, HarmonicResidualIsSecondOrder) {
  const auto p = potentials(2, 1.0, {0, 1});
  for (auto [rho, z] : std::vector<std::pair<double, double>>{{0.15, 0.2}, {0.3, 0.45}, {0.2, 0.9}}) {
    const double r1 = std::abs(laplacian_residual(p, 0, rho, z, 2e-3));
    const double r2 = std::abs(laplacian_residual(p, 0, rho, z, 1e-3));
    ASSERT_GT(r2, 1e-9) << "residual at rounding level; order not observable";
    EXPECT_NEAR(std::log2(r1 / r2), 2.0, 0.2) << rho << " " << z;
  }
}

TEST(Potentials, GradientMatchesFiniteDifferences) {
  const auto p = potentials(3, 1.0, test::kE1E2E1E3);
  const double h = 1e-5;
  for (double rho : {0.07, 0.35, 0.9}) {
    for (double z : {0.05, 0.33, 0.61}) {
      for (std::size_t i = 0; i < 3; ++i) {
        const auto g = potential_gradient(p, i, rho, z);
        auto u = [&](double r, double zz) { return renormalized_potential(p, i, r, zz); };
        EXPECT_NEAR(g.rho, (u(rho + h, z) - u(rho - h, z)) / (2 * h), 1e-6 / rho);
        EXPECT_NEAR(g.z, (u(rho, z + h) - u(rho, z - h)) / (2 * h), 1e-6 / rho);
      }
    }
  }
}

TEST(Potentials, PeriodicInZ) {
  const auto p = potentials(3, 1.7, test::kE1E2E1E3);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(renormalized_potential(p, i, 0.3, 0.2), renormalized_potential(p, i, 0.3, 0.2 + 1.7), 1e-12);
    EXPECT_NEAR(renormalized_potential(p, i, 0.3, 0.2), renormalized_potential(p, i, 0.3, 0.2 - 3 * 1.7), 1e-12);
  }
}

TEST(Potentials, ReflectionSymmetry) {
  // e1 e2 e1 e3 e4 reflected about the e2 midpoint swaps u3 and u4
  const auto p = potentials(4, 1.0, test::kE1E2E1E3E4);
  const double zc = 0.3;
  for (double dz : {0.05, 0.21, 0.4}) {
    EXPECT_NEAR(renormalized_potential(p, 2, 0.4, zc + dz), renormalized_potential(p, 3, 0.4, zc - dz), 1e-12);
    EXPECT_NEAR(renormalized_potential(p, 0, 0.4, zc + dz), renormalized_potential(p, 0, 0.4, zc - dz), 1e-12);
  }
}

TEST(Potentials, RegularPartOnTheAxis) {
  const auto p = potentials(2, 2.0, {0, 1});
  const double z = 0.4;  // inside the e1 rod [0, 1)
  const double axis = regularized_potential(p, 0, 0.0, z);
  EXPECT_TRUE(std::isfinite(axis));
  EXPECT_NEAR(regularized_potential(p, 0, 1e-4, z), axis, 1e-7);
  EXPECT_NEAR(renormalized_potential(p, 0, 1e-4, z) - 2.0 * std::log(1e-4), axis, 1e-7);
  // the other family is smooth through the axis here
  EXPECT_TRUE(std::isfinite(renormalized_potential(p, 1, 0.0, z)));
  EXPECT_THROW(renormalized_potential(p, 0, 0.0, z), SingularPointError);
  EXPECT_THROW(regularized_potential(p, 1, 0.0, z), DomainError);
  EXPECT_THROW(renormalized_potential(p, 1, 0.0, 1.0), SingularPointError);
}

TEST(Potentials, FarFieldDerivatives) {
  for (std::size_t n : {2u, 3u}) {
    std::vector<std::size_t> fam(n);
    for (std::size_t i = 0; i < n; ++i) fam[i] = i;
    const auto p = potentials(n, 1.0, fam);
    const auto g6 = potential_gradient(p, 0, 6.0, 0.3);
    EXPECT_NEAR(6.0 * g6.rho, 2.0 / n, 1e-10);
    const double dz3 = std::abs(potential_gradient(p, 0, 3.0, 0.3).z);
    const double dz4 = std::abs(potential_gradient(p, 0, 4.0, 0.3).z);
    EXPECT_GT(dz3, 0.0);
    // leading Fourier mode decays like exp(-2 pi rho / L)
    EXPECT_NEAR(std::log(dz3 / dz4), 2.0 * std::numbers::pi, 0.2);
  }
}

TEST(Potentials, FarFieldAmplitudes) {
  std::vector<double> rho;
  for (int k = 0; k < 16; ++k) rho.push_back(10.0 * std::pow(10.0, k / 15.0));
  const auto p2 = potentials(2, 1.0, {0, 1});
  const auto f2 = far_field_fit(p2, 0, rho);
  EXPECT_NEAR(f2.amplitude, 1.0, 1e-10);
  EXPECT_NEAR(f2.constant, p2.far_constant(0), 1e-9);
  const auto p3 = potentials(3, 1.0, {0, 1, 2});
  EXPECT_NEAR(far_field_fit(p3, 1, rho).amplitude, 2.0 / 3.0, 1e-10);

  const PotentialSet q(RodDiagram::from_families(3, 1.0, {0, 1, 2}, {Fraction(2, 5), Fraction(3, 10), Fraction(3, 10)}));
  double total = 0.0;
  for (std::size_t i = 0; i < 3; ++i) total += far_field_fit(q, i, rho).amplitude;
  EXPECT_NEAR(total, 2.0, 1e-9);
  EXPECT_THROW(far_field_fit(q, 0, {10.0}), InputError);
}

TEST(Potentials, SingleRodIsFlat) {
  const PotentialSet p(RodDiagram::basic(1, 1.0), {}, {0.5});
  for (double rho : {1e-3, 0.4, 7.0}) {
    EXPECT_NEAR(renormalized_potential(p, 0, rho, 0.3), 2.0 * std::log(rho) + p.lapse_constant(), 1e-14);
  }
  EXPECT_NEAR(p.lapse_constant(), 0.5 - 2.0 * std::log(2.0), 1e-15);
}

TEST(Potentials, AdditiveConstants) {
  const auto p = potentials(2, 1.0, {0, 1});
  const auto q = p.with_kappa({0.3, -0.1});
  EXPECT_NEAR(renormalized_potential(q, 0, 0.4, 0.2) - renormalized_potential(p, 0, 0.4, 0.2), 0.3, 1e-14);
  EXPECT_NEAR(q.lapse_constant() - p.lapse_constant(), 0.2, 1e-14);
  EXPECT_THROW(p.with_kappa({1.0}), InputError);
}

TEST(Potentials, LowTruncationIsReported) {
  PotentialOptions o;
  o.truncation = 2;
  o.route = Route::direct;
  const auto p = potentials(2, 1.0, {0, 1}, o);
  EXPECT_THROW(renormalized_potential(p, 0, 0.4, 0.2), AccuracyError);
}
