#include "gsol/solution.hpp"

namespace gsol {

SolitonSolution::SolitonSolution(RodDiagram diagram, PotentialOptions potential, AlphaOptions alpha,
                                 std::vector<double> kappa)
    : potentials_(std::make_shared<const PotentialSet>(std::move(diagram), potential, std::move(kappa))),
      alpha_(*potentials_, alpha) {}

SolitonSolution SolitonSolution::with_constants(std::vector<double> kappa, double alpha0) const {
  AlphaOptions a = alpha_.options();
  a.alpha0 = alpha0;
  return SolitonSolution(diagram(), potentials_->options(), a, std::move(kappa));
}

}  // namespace gsol
