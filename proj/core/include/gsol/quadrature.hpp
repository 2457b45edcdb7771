#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gsol/potentials.hpp"

namespace gsol {

struct Point {
  double rho = 0.0;
  double z = 0.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b] to
/// absolute tolerance `tol`. Throws AccuracyError when the interval budget is
/// exhausted.
QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b, double tol,
                                int max_intervals = 4000);

/// alpha integrand (alpha_rho, alpha_z) assembled from potential jets. Jets
/// flagged singular contribute through their regular part, so the result is
/// finite on rod interiors down to rho = 0.
Gradient alpha_integrand(std::span<const PotentialJet> jets, double rho);

/// Second derivatives of alpha from differentiating the integrand, for
/// rho > 0.
Hessian alpha_hessian(std::span<const PotentialJet> jets, double rho);

/// Order of the two legs of the default rectilinear path.
enum class PathKind {
  axial_first,   ///< move in z at the base radius, then in rho
  radial_first,  ///< move in rho at the base height, then in z
};

struct AlphaOptions {
  double base_rho = 0.0;  ///< 0 selects the period L
  double base_z = 0.0;
  double alpha0 = 0.0;
  double tolerance = 1e-10;  ///< absolute, per path segment
  PathKind path = PathKind::axial_first;
};

/// Conformal factor alpha defined by line integration from a base point.
/// Holds a reference to the potentials, which must outlive it.
class AlphaField {
 public:
  explicit AlphaField(const PotentialSet& potentials, AlphaOptions options = {});

  [[nodiscard]] const PotentialSet& potentials() const { return *potentials_; }
  [[nodiscard]] const AlphaOptions& options() const { return options_; }
  [[nodiscard]] Point base() const { return {options_.base_rho, options_.base_z}; }
  [[nodiscard]] double alpha0() const { return options_.alpha0; }
  [[nodiscard]] AlphaField with_alpha0(double alpha0) const;

  [[nodiscard]] Gradient integrand(double rho, double z) const;
  [[nodiscard]] Hessian hessian(double rho, double z) const;

  /// alpha at the target along the configured path.
  [[nodiscard]] double operator()(double rho, double z) const { return at(rho, z, options_.path); }
  [[nodiscard]] double at(double rho, double z, PathKind path) const;
  /// Line integral of d(alpha) along a polyline (no alpha0 added).
  [[nodiscard]] double integrate_path(const std::vector<Point>& polyline) const;
  [[nodiscard]] double integrate_segment(Point from, Point to) const;

 private:
  const PotentialSet* potentials_;
  AlphaOptions options_;
};

/// alpha at the target through an arbitrary polyline starting at the base.
double integrate_alpha(const AlphaField& field, const std::vector<Point>& polyline);

/// |d_z alpha_rho - d_rho alpha_z| by central differences of an integrand.
double integrability_residual(const std::function<Gradient(double, double)>& integrand, double rho, double z,
                              double h);
double integrability_residual(const AlphaField& field, double rho, double z, double h);

/// Integral of alpha_z over one period at fixed rho.
double periodicity_defect(const AlphaField& field, double rho);

struct AxisLimit {
  double value = 0.0;
  double error = 0.0;  ///< Richardson error estimate
};

/// lim_{rho -> 0} alpha(rho, z) for z strictly inside rod `rod`, by Richardson
/// extrapolation in rho^2 over rho in {1e-2, 5e-3, 2.5e-3}, scaled down to a
/// sixteenth of the corner distance when that is smaller. Throws
/// AccuracyError when the estimate exceeds `max_error`.
AxisLimit alpha_axis_limit(const AlphaField& field, std::size_t rod, double z, double max_error = 1e-7);

}  // namespace gsol
