#pragma once

#include <cstddef>
#include <vector>

#include "gsol/green.hpp"
#include "gsol/rod_diagram.hpp"

namespace gsol {

/// How the periodic sum is evaluated. The direct route sums image rods up to
/// the truncation order with analytic tail corrections; the cylindrical route
/// uses the Fourier-Bessel expansion in z, which converges fast away from the
/// axis. Automatic switches at rho = period / 2.
enum class Route { automatic, direct, cylindrical };

struct PotentialOptions {
  int truncation = 40;       ///< image order m for the direct route
  double tolerance = 1e-10;  ///< bound on the neglected tail
  Route route = Route::automatic;
};

/// Potential jet at a point. When the point lies over a rod of the family
/// (`singular`), the fields hold the regular part u - 2 log(rho).
struct PotentialJet {
  double value = 0.0;
  Gradient grad;
  Hessian hess;
  bool singular = false;

  [[nodiscard]] double full_value(double rho) const;
  [[nodiscard]] Gradient full_grad(double rho) const;
  [[nodiscard]] Hessian full_hess(double rho) const;
};

/// Renormalized z-periodic potentials u_1..u_n of a rod diagram whose rods all
/// carry basis structures. Immutable; evaluation is thread safe.
class PotentialSet {
 public:
  explicit PotentialSet(RodDiagram diagram, PotentialOptions options = {}, std::vector<double> kappa = {});

  [[nodiscard]] const RodDiagram& diagram() const { return diagram_; }
  [[nodiscard]] const PotentialOptions& options() const { return options_; }
  [[nodiscard]] std::size_t n() const { return diagram_.n; }
  [[nodiscard]] double period() const { return diagram_.period; }
  [[nodiscard]] const std::vector<double>& kappa() const { return kappa_; }
  /// Family share of the period, lambda_i.
  [[nodiscard]] double share(std::size_t i) const { return share_.at(i); }
  /// Far-field amplitude A_i = 2 lambda_i (the coefficient of log rho).
  [[nodiscard]] double amplitude(std::size_t i) const { return 2.0 * share_.at(i); }
  /// c = sum kappa_i - 2 log(2L), so that sum u_i = 2 log rho + c.
  [[nodiscard]] double lapse_constant() const;
  /// Far-field constant c_i in u_i = A_i log rho + c_i + O(exp(-rho)).
  [[nodiscard]] double far_constant(std::size_t i) const;

  /// Copy with different additive constants.
  [[nodiscard]] PotentialSet with_kappa(std::vector<double> kappa) const;

  /// Rod index k whose open interval (mod L) contains z, if any.
  [[nodiscard]] std::optional<std::size_t> rod_containing(double z) const;
  /// Distance from z to the nearest corner (mod L); infinite without corners.
  [[nodiscard]] double corner_distance(double z) const;
  /// True when z lies strictly inside a rod of family i.
  [[nodiscard]] bool over_family_rod(std::size_t i, double z) const;

  /// Jet of u_i. rho = 0 is allowed over a family-i rod (regular part only)
  /// and over rods of other families; corners on the axis throw
  /// SingularPointError.
  [[nodiscard]] PotentialJet jet(std::size_t i, double rho, double z, Route route = Route::automatic) const;
  /// Jets of every family at one point.
  [[nodiscard]] std::vector<PotentialJet> jets(double rho, double z, Route route = Route::automatic) const;

 private:
  [[nodiscard]] PotentialJet direct(std::size_t i, double rho, double z) const;
  [[nodiscard]] PotentialJet cylindrical(std::size_t i, double rho, double z) const;

  RodDiagram diagram_;
  PotentialOptions options_;
  std::vector<double> kappa_;
  std::vector<double> share_;
  std::vector<std::vector<ChargedInterval>> family_rods_;  // within [0, L)
  std::vector<double> corners_;                            // within [0, L)
};

/// u_i(rho, z); throws SingularPointError over a family-i rod at rho = 0.
double renormalized_potential(const PotentialSet& set, std::size_t i, double rho, double z);
/// u_i - 2 log(rho), for z strictly over a family-i rod; finite at rho = 0.
/// Throws DomainError elsewhere and SingularPointError at a corner.
double regularized_potential(const PotentialSet& set, std::size_t i, double rho, double z);
Gradient potential_gradient(const PotentialSet& set, std::size_t i, double rho, double z);
/// Five-point finite-difference axisymmetric Laplacian of u_i.
double laplacian_residual(const PotentialSet& set, std::size_t i, double rho, double z, double h);

struct FarFieldFit {
  double amplitude = 0.0;  ///< A_i
  double constant = 0.0;   ///< c_i
  double rms = 0.0;        ///< residual of the linear fit
};

/// Least-squares fit of u_i(rho, z) = A log rho + c. Throws InputError with
/// fewer than two samples.
FarFieldFit far_field_fit(const PotentialSet& set, std::size_t i, const std::vector<double>& rho, double z = 0.0);

/// Linear least squares y = slope * x + intercept.
FarFieldFit fit_log_law(const std::vector<double>& rho, const std::vector<double>& values);

}  // namespace gsol
