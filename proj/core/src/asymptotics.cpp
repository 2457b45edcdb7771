#include "gsol/asymptotics.hpp"

#include <cmath>

#include "gsol/errors.hpp"

namespace gsol {

KasnerData kasner_from_amplitudes(const std::vector<double>& amplitudes, double tolerance,
                                  std::optional<double> lapse_constant, std::optional<double> alpha_constant) {
  if (amplitudes.empty()) throw InputError("kasner: no amplitudes");
  double sum = 0.0, sq = 0.0;
  for (double a : amplitudes) {
    if (!(a > 0.0)) throw InputError("kasner: amplitudes must be positive");
    sum += a;
    sq += a * a;
  }
  if (std::abs(sum - 2.0) > tolerance) throw InputError("kasner: amplitudes must sum to 2");
  KasnerData k;
  k.amplitudes = amplitudes;
  k.C = sq / 8.0 - 0.5;
  if (!(k.C + 1.0 > 0.0)) throw InputError("kasner: C + 1 must be positive");
  k.p_z = k.C / (k.C + 1.0);
  double ps = k.p_z, pq = k.p_z * k.p_z;
  for (double a : amplitudes) {
    const double p = a / (2.0 * (k.C + 1.0));
    k.p.push_back(p);
    ps += p;
    pq += p * p;
  }
  k.sum_residual = std::abs(ps - 1.0);
  k.square_residual = std::abs(pq - 1.0);
  if (lapse_constant) k.q0 = std::exp(-*lapse_constant);
  if (alpha_constant) k.q1 = std::exp(2.0 * *alpha_constant) / ((k.C + 1.0) * (k.C + 1.0));
  return k;
}

KasnerFit verify_kasner(const SolitonSolution& solution, double lo, double hi, int samples) {
  if (samples < 2 || !(lo > 0.0) || !(hi > lo)) throw InputError("verify_kasner: bad fit window");
  const double L = solution.period();
  std::vector<double> rho;
  for (int k = 0; k < samples; ++k) rho.push_back(L * lo * std::pow(hi / lo, k / (samples - 1.0)));

  KasnerFit fit;
  const std::size_t n = solution.n();
  std::vector<double> alpha;
  alpha.push_back(solution.alpha()(rho[0], 0.0));
  for (std::size_t k = 1; k < rho.size(); ++k) {
    alpha.push_back(alpha.back() + solution.alpha().integrate_segment({rho[k - 1], 0.0}, {rho[k], 0.0}));
  }
  std::vector<double> amps;
  for (std::size_t i = 0; i < n; ++i) {
    fit.u.push_back(far_field_fit(solution.potentials(), i, rho));
    amps.push_back(fit.u.back().amplitude);
  }
  fit.alpha = fit_log_law(rho, alpha);
  double worst = fit.alpha.rms;
  for (const auto& f : fit.u) worst = std::max(worst, f.rms);
  if (worst > 1e-6) throw AccuracyError("far-field fit is not a clean log law (rms " + std::to_string(worst) + ")");

  fit.data = kasner_from_amplitudes(amps, 1e-6, solution.lapse_constant(), fit.alpha.constant);
  fit.c_gap = std::abs(fit.alpha.amplitude - fit.data.C);
  fit.p_z_fit = fit.alpha.amplitude / (fit.alpha.amplitude + 1.0);
  return fit;
}

double BlackHoleSolution::lapse_squared(double rho, double z) const {
  return std::exp(renormalized_potential(base->potentials(), family, rho, z));
}

double BlackHoleSolution::lapse_squared_identity(double rho, double z) const {
  double s = 0.0;
  for (std::size_t j = 0; j < base->n(); ++j) {
    if (j != family) s += renormalized_potential(base->potentials(), j, rho, z);
  }
  return rho * rho * std::exp(-s + base->lapse_constant());
}

std::vector<double> BlackHoleSolution::metric_diagonal(double alpha, const std::vector<double>& u) const {
  std::vector<double> d = {std::exp(2.0 * alpha), std::exp(2.0 * alpha), -std::exp(u.at(family))};
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (j != family) d.push_back(std::exp(u[j]));
  }
  d.push_back(std::exp(-base->lapse_constant()));
  return d;
}

BlackHoleSolution wick_rotate(const SolitonSolution& solution, std::size_t family) {
  const std::size_t n = solution.n();
  if (family >= n) throw InputError("wick: family index out of range");
  BlackHoleSolution bh;
  bh.base = &solution;
  bh.family = family;
  bh.torus_rank = n - 1;
  const RodDiagram& d = solution.diagram();
  bh.diagram = d;
  bh.diagram.n = n - 1;
  bh.diagram.symmetry.reset();
  const std::size_t R = d.size();
  for (std::size_t k = 0; k < R; ++k) {
    Rod& r = bh.diagram.rods[k];
    const std::size_t f = *d.family_of(k);
    if (f == family) {
      r.kind = RodKind::horizon;
      r.structure = RodStructure::zero(n - 1);
      HorizonRod h;
      h.rod = k;
      h.left_family = *d.family_of((k + R - 1) % R);
      h.right_family = *d.family_of((k + 1) % R);
      if (n == 2) {
        h.topology = ProductManifold::spheres({2});
      } else {
        h.topology = h.left_family != h.right_family ? ProductManifold::spheres({3}) : ProductManifold::spheres({1, 2});
        h.topology.times_torus(static_cast<int>(n) - 3);
      }
      bh.horizons.push_back(std::move(h));
    } else {
      std::vector<std::int64_t> e;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != family) e.push_back(r.structure[j]);
      }
      r.structure = RodStructure(std::move(e));
    }
  }
  return bh;
}

double wick_ricci_check(const BlackHoleSolution& bh, double rho, double z, double h) {
  const auto samples = sample_stencil(*bh.base, rho, z, h);
  MetricStencil st;
  st.h = h;
  for (std::size_t k = 0; k < 9; ++k) st.g[k] = SquareMatrix::diagonal(bh.metric_diagonal(samples[k].alpha, samples[k].u));
  return fd_curvature(st).normalized_ricci_max();
}

}  // namespace gsol
