#include "gsol/balance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gsol/errors.hpp"

namespace gsol {

double angle_defect_at(const SolitonSolution& solution, std::size_t rod, double z) {
  const auto family = solution.diagram().family_of(rod);
  if (!family) throw InputError("angle defect needs an axis rod with basis structure");
  const AxisLimit a = alpha_axis_limit(solution.alpha(), rod, z);
  const double ubar = solution.potentials().jet(*family, 0.0, z).value;
  return a.value - 0.5 * ubar;
}

double angle_defect(const SolitonSolution& solution, std::size_t rod) {
  return angle_defect_at(solution, rod, solution.diagram().midpoint(rod));
}

double defect_constancy(const SolitonSolution& solution, std::size_t rod, int samples) {
  if (samples < 2) throw InputError("defect_constancy needs at least two samples");
  const RodDiagram& d = solution.diagram();
  const double a = d.start(rod), len = d.length(rod);
  double lo = INFINITY, hi = -INFINITY;
  for (int k = 1; k <= samples; ++k) {
    const double b = angle_defect_at(solution, rod, a + len * k / (samples + 1.0));
    lo = std::min(lo, b);
    hi = std::max(hi, b);
  }
  return hi - lo;
}

DefectReport defect_report(const SolitonSolution& solution, double tolerance) {
  const RodDiagram& d = solution.diagram();
  DefectReport r;
  const std::size_t n = solution.n();
  std::vector<double> lo(n, INFINITY), hi(n, -INFINITY), sum(n, 0.0);
  std::vector<int> count(n, 0);
  r.balanced = true;
  for (std::size_t k = 0; k < d.size(); ++k) {
    RodDefect rd;
    rd.rod = k;
    rd.family = *d.family_of(k);
    rd.value = angle_defect(solution, k);
    rd.spread = defect_constancy(solution, k);
    lo[rd.family] = std::min(lo[rd.family], rd.value);
    hi[rd.family] = std::max(hi[rd.family], rd.value);
    sum[rd.family] += rd.value;
    ++count[rd.family];
    if (!(std::abs(rd.value) < tolerance && rd.spread < tolerance)) r.balanced = false;
    r.rods.push_back(rd);
  }
  for (std::size_t i = 0; i < n; ++i) {
    r.family_mean.push_back(sum[i] / count[i]);
    r.family_spread.push_back(hi[i] - lo[i]);
  }
  r.periodicity_defect = periodicity_defect(solution.alpha(), solution.period());
  return r;
}

BalanceResult balance_constants(const SolitonSolution& solution, BalanceOptions options) {
  BalanceResult out;
  out.before = defect_report(solution);
  const std::size_t n = solution.n();
  if (std::abs(out.before.periodicity_defect) > options.periodicity_tolerance) {
    std::ostringstream msg;
    msg << "alpha is not periodic (period defect " << out.before.periodicity_defect
        << "); the diagram lacks the reflection symmetry needed for balancing";
    throw UnbalanceableError(msg.str());
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (out.before.family_spread[i] > options.spread_tolerance) {
      std::ostringstream msg;
      msg << "rods of family " << i + 1 << " have different angle defects (spread "
          << out.before.family_spread[i] << "); no choice of constants balances them";
      throw UnbalanceableError(msg.str());
    }
  }
  out.alpha0 = solution.alpha().alpha0();
  out.kappa = solution.potentials().kappa();
  for (std::size_t i = 0; i < n; ++i) out.kappa[i] += 2.0 * out.before.family_mean[i];
  return out;
}

SolitonSolution balance(const SolitonSolution& solution, BalanceOptions options) {
  const BalanceResult r = balance_constants(solution, options);
  return solution.with_constants(r.kappa, r.alpha0);
}

}  // namespace gsol
