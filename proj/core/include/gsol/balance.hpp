#pragma once

#include <cstddef>
#include <vector>

#include "gsol/solution.hpp"

namespace gsol {

/// Logarithmic angle defect b = lim_{rho->0} (log rho + alpha - u_i / 2) at
/// axis height z strictly inside rod `rod` (family i).
double angle_defect_at(const SolitonSolution& solution, std::size_t rod, double z);
/// Defect at the rod midpoint.
double angle_defect(const SolitonSolution& solution, std::size_t rod);
/// Largest difference between defects at `samples` evenly spaced interior
/// points (3 gives the quartiles).
double defect_constancy(const SolitonSolution& solution, std::size_t rod, int samples = 3);

struct RodDefect {
  std::size_t rod = 0;
  std::size_t family = 0;
  double value = 0.0;   ///< at the midpoint
  double spread = 0.0;  ///< quartile constancy
};

struct DefectReport {
  std::vector<RodDefect> rods;
  std::vector<double> family_mean;
  std::vector<double> family_spread;  ///< between rods of one family
  double periodicity_defect = 0.0;    ///< of alpha at rho = L
  bool balanced = false;              ///< every |b| and spread within tolerance
};

DefectReport defect_report(const SolitonSolution& solution, double tolerance = 1e-6);

struct BalanceOptions {
  double spread_tolerance = 1e-6;       ///< allowed intra-family disagreement
  double periodicity_tolerance = 1e-8;  ///< allowed alpha period defect
};

struct BalanceResult {
  std::vector<double> kappa;
  double alpha0 = 0.0;
  DefectReport before;
};

/// Constants that remove every conical singularity, in the gauge alpha0
/// fixed: kappa_i shifts b_i by -kappa_i / 2. Throws UnbalanceableError when
/// rods of one family disagree or alpha is not periodic.
BalanceResult balance_constants(const SolitonSolution& solution, BalanceOptions options = {});

/// The balanced solution.
SolitonSolution balance(const SolitonSolution& solution, BalanceOptions options = {});

}  // namespace gsol
