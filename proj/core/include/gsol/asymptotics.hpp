#pragma once

#include <optional>
#include <vector>

#include "gsol/curvature.hpp"
#include "gsol/solution.hpp"
#include "gsol/topology.hpp"

namespace gsol {

/// Far-field Kasner data: with tau = rho^{C+1} the slice metric tends to
///   q1 dtau^2 + e^{2 c_alpha} tau^{2 p_z} dz^2 + sum e^{c_i} tau^{2 p_i} dphi_i^2
/// and the lapse squared is q0.
struct KasnerData {
  std::vector<double> amplitudes;  ///< A_i
  double C = 0.0;                  ///< sum A_i^2 / 8 - 1/2
  double p_z = 0.0;
  std::vector<double> p;           ///< torus exponents
  double sum_residual = 0.0;       ///< |p_z + sum p_i - 1|
  double square_residual = 0.0;    ///< |p_z^2 + sum p_i^2 - 1|
  std::optional<double> q0;        ///< e^{-c}
  std::optional<double> q1;        ///< e^{2 c_alpha} / (C + 1)^2
};

/// Exponents from amplitudes. Throws InputError unless every A_i > 0 and
/// |sum A_i - 2| <= tolerance.
KasnerData kasner_from_amplitudes(const std::vector<double>& amplitudes, double tolerance = 1e-9,
                                  std::optional<double> lapse_constant = {},
                                  std::optional<double> alpha_constant = {});

struct KasnerFit {
  KasnerData data;                ///< from the fitted amplitudes
  std::vector<FarFieldFit> u;     ///< u_i = A_i log rho + c_i
  FarFieldFit alpha;              ///< alpha = C log rho + c_alpha
  double c_gap = 0.0;             ///< |C_fit - (sum A^2 / 8 - 1/2)|
  double p_z_fit = 0.0;           ///< C_fit / (C_fit + 1)
};

/// Fits u_i and alpha on rho in [lo, hi] * L (geometric samples at z = 0)
/// and forms the Kasner data. Throws AccuracyError when the fit is poor.
KasnerFit verify_kasner(const SolitonSolution& solution, double lo = 10.0, double hi = 100.0, int samples = 16);

/// Horizon rod of a Wick-rotated solution.
struct HorizonRod {
  std::size_t rod = 0;
  std::size_t left_family = 0;
  std::size_t right_family = 0;
  ProductManifold topology;
};

/// Static black hole obtained by turning the angle phi_i into time:
///   -e^{u_i} dt^2 + e^{2 alpha}(drho^2 + dz^2) + sum_{j != i} e^{u_j} dphi_j^2 + e^{-c} dpsi^2,
/// where psi is the former static time, now a circle direction.
struct BlackHoleSolution {
  const SolitonSolution* base = nullptr;
  std::size_t family = 0;
  RodDiagram diagram;  ///< family-i rods turned into horizon rods
  std::vector<HorizonRod> horizons;
  std::size_t torus_rank = 0;  ///< n - 1 rotational Killing fields left

  /// e^{u_i}; equals rho^2 e^{-sum_{j != i} u_j + c}.
  [[nodiscard]] double lapse_squared(double rho, double z) const;
  /// The same quantity through the lapse identity.
  [[nodiscard]] double lapse_squared_identity(double rho, double z) const;
  /// Diagonal of the Lorentzian metric in coordinates (rho, z, t, phi_j..., psi).
  [[nodiscard]] std::vector<double> metric_diagonal(double alpha, const std::vector<double>& u) const;
};

/// Throws InputError for an out-of-range family.
BlackHoleSolution wick_rotate(const SolitonSolution& solution, std::size_t family);

/// Finite-difference Ricci residual of the Lorentzian metric.
double wick_ricci_check(const BlackHoleSolution& bh, double rho, double z, double h);

}  // namespace gsol
