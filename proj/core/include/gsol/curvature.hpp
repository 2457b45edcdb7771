#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "gsol/fd_geometry.hpp"
#include "gsol/solution.hpp"

namespace gsol {

/// Metric coefficients at one point of the spatial slice.
struct MetricFrame {
  double rho = 0.0;
  double z = 0.0;
  double alpha = 0.0;
  double conformal = 0.0;     ///< e^{2 alpha}
  std::vector<double> torus;  ///< e^{u_i}
  double lapse = 0.0;         ///< rho e^{-sum u / 2}
  double lapse_residual = 0.0;  ///< |lapse - e^{-c/2}|
};

MetricFrame metric_at(const SolitonSolution& solution, double rho, double z);

/// Closed-form nonzero Riemann components in coordinates (rho, z, phi_1..n).
struct CurvatureFrame {
  std::size_t n = 0;
  double rho = 0.0;
  double z = 0.0;
  double alpha = 0.0;
  Gradient dalpha;
  double laplace_alpha = 0.0;  ///< from the harmonic identity
  double r_rzrz = 0.0;         ///< -e^{2 alpha} laplace_alpha
  std::vector<double> f1, f2, f3;       ///< R_{rho i rho i}, R_{rho i z i}, R_{z i z i}
  std::vector<std::vector<double>> g;   ///< R_{ijij}, symmetric, zero diagonal
  std::vector<double> metric_diagonal;  ///< e^{2a}, e^{2a}, e^{u_1}, ...

  /// F1 F3 - F2^2 for family i.
  [[nodiscard]] double determinant(std::size_t i) const { return f1[i] * f3[i] - f2[i] * f2[i]; }
  /// Full R_abcd from the closed forms and the Riemann symmetries.
  [[nodiscard]] double R(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const;
};

CurvatureFrame curvature_components(const SolitonSolution& solution, double rho, double z);

/// Curvature endomorphism R(X, Y) as a matrix with entries R_abXY.
struct Endomorphism {
  std::string label;
  std::size_t x = 0, y = 0;
  SquareMatrix matrix;
};

/// The (n+2)(n+1)/2 matrices R(d_rho, d_z), R(d_phi_i, d_phi_j),
/// R(d_rho, d_phi_i), R(d_z, d_phi_i).
std::vector<Endomorphism> curvature_endomorphisms(const CurvatureFrame& frame);
std::vector<Endomorphism> curvature_endomorphisms(const SolitonSolution& solution, double rho, double z);

struct HolonomyRank {
  int rank = 0;
  int dimension = 0;  ///< dim so(n+2)
  std::vector<double> singular_values;
};

/// Numerical rank of the span of the endomorphisms inside so(n+2), measured
/// in an orthonormal frame. Singular values below rel * sigma_max (or below
/// abs_floor) count as zero.
HolonomyRank holonomy_rank(const std::vector<Endomorphism>& matrices, const std::vector<double>& metric_diagonal,
                           double rel = 1e-8, double abs_floor = 1e-12);
HolonomyRank holonomy_rank(const SolitonSolution& solution, double rho, double z, double rel = 1e-8);

/// alpha and u_1..u_n at the 3x3 stencil around (rho, z). alpha at the outer
/// points comes from short segments off the centre value, so differences
/// are accurate to rounding.
struct FieldSample {
  double alpha = 0.0;
  std::vector<double> u;
};
using AlphaPerturbation = std::function<double(double rho, double z)>;
std::array<FieldSample, 9> sample_stencil(const SolitonSolution& solution, double rho, double z, double h,
                                          const AlphaPerturbation& perturb = {});

/// Riemann tensor of the spatial slice by finite differences (independent
/// of the closed forms).
FdCurvature fd_slice_curvature(const SolitonSolution& solution, double rho, double z, double h,
                               const AlphaPerturbation& perturb = {});
/// Largest frame component of the finite-difference Ricci tensor.
double ricci_residual(const SolitonSolution& solution, double rho, double z, double h,
                      const AlphaPerturbation& perturb = {});

enum class ContourKind {
  enclosing,  ///< axis endpoints at the midpoints of the neighbouring rods
  inset,      ///< axis endpoints inside the rod, a tenth of its length from each end
};

/// Flux of rho grad(U), U the segment potential of `form_rod`, through a
/// rectangular contour around `contour_rod` reaching out to `radius`, scaled
/// by e^{c/2} (2 pi)^{n-1}. Throws InputError when a contour endpoint touches
/// the closure of a rod of the form's family.
double homology_flux(const SolitonSolution& solution, std::size_t form_rod, std::size_t contour_rod, double radius,
                     ContourKind kind = ContourKind::enclosing);
/// 2 (2 pi)^{n-1} e^{c/2} |Gamma| for the form of `rod`.
double expected_flux(const SolitonSolution& solution, std::size_t rod);

}  // namespace gsol
