#pragma once

#include <memory>
#include <vector>

#include "gsol/potentials.hpp"
#include "gsol/quadrature.hpp"

namespace gsol {

/// Rod diagram together with its potentials, additive constants and alpha:
/// the static metric
///   -rho^2 e^{-sum u} dt^2 + e^{2 alpha}(drho^2 + dz^2) + sum e^{u_i} dphi_i^2.
/// Copies share the immutable potential set.
class SolitonSolution {
 public:
  explicit SolitonSolution(RodDiagram diagram, PotentialOptions potential = {}, AlphaOptions alpha = {},
                           std::vector<double> kappa = {});

  [[nodiscard]] const PotentialSet& potentials() const { return *potentials_; }
  [[nodiscard]] const AlphaField& alpha() const { return alpha_; }
  [[nodiscard]] const RodDiagram& diagram() const { return potentials_->diagram(); }
  [[nodiscard]] std::size_t n() const { return potentials_->n(); }
  [[nodiscard]] double period() const { return potentials_->period(); }
  [[nodiscard]] double lapse_constant() const { return potentials_->lapse_constant(); }

  /// Same diagram with new constants kappa_i and alpha0.
  [[nodiscard]] SolitonSolution with_constants(std::vector<double> kappa, double alpha0) const;

 private:
  std::shared_ptr<const PotentialSet> potentials_;
  AlphaField alpha_;
};

}  // namespace gsol
