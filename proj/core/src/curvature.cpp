#include "gsol/curvature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "gsol/errors.hpp"

namespace gsol {

MetricFrame metric_at(const SolitonSolution& solution, double rho, double z) {
  if (!(rho > 0.0)) throw DomainError("metric_at needs rho > 0");
  MetricFrame m;
  m.rho = rho;
  m.z = z;
  m.alpha = solution.alpha()(rho, z);
  m.conformal = std::exp(2.0 * m.alpha);
  double sum = 0.0;
  for (const auto& j : solution.potentials().jets(rho, z)) {
    const double u = j.full_value(rho);
    m.torus.push_back(std::exp(u));
    sum += u;
  }
  m.lapse = rho * std::exp(-0.5 * sum);
  m.lapse_residual = std::abs(m.lapse - std::exp(-0.5 * solution.lapse_constant()));
  return m;
}

CurvatureFrame curvature_components(const SolitonSolution& solution, double rho, double z) {
  if (!(rho > 0.0)) throw DomainError("curvature_components needs rho > 0");
  const auto jets = solution.potentials().jets(rho, z);
  CurvatureFrame f;
  f.n = jets.size();
  f.rho = rho;
  f.z = z;
  f.alpha = solution.alpha()(rho, z);
  f.dalpha = alpha_integrand(jets, rho);
  const double ar = f.dalpha.rho, az = f.dalpha.z;

  std::vector<double> u(f.n);
  std::vector<Gradient> du(f.n);
  double grad2 = 0.0;
  for (std::size_t i = 0; i < f.n; ++i) {
    u[i] = jets[i].full_value(rho);
    du[i] = jets[i].full_grad(rho);
    grad2 += du[i].rho * du[i].rho + du[i].z * du[i].z;
  }
  f.laplace_alpha = -grad2 / 8.0 + 0.5 / (rho * rho);
  const double e2a = std::exp(2.0 * f.alpha);
  f.r_rzrz = -e2a * f.laplace_alpha;

  f.metric_diagonal = {e2a, e2a};
  f.g.assign(f.n, std::vector<double>(f.n, 0.0));
  for (std::size_t i = 0; i < f.n; ++i) {
    const Gradient g = du[i];
    const Hessian h = jets[i].full_hess(rho);
    const double e = std::exp(u[i]) / 4.0;
    f.f1.push_back(e * (2 * g.rho * ar - 2 * g.z * az - 2 * h.rr - g.rho * g.rho));
    f.f2.push_back(e * (2 * g.rho * az + 2 * g.z * ar - 2 * h.rz - g.rho * g.z));
    f.f3.push_back(e * (2 * g.z * az - 2 * g.rho * ar - 2 * h.zz - g.z * g.z));
    f.metric_diagonal.push_back(std::exp(u[i]));
  }
  for (std::size_t i = 0; i < f.n; ++i) {
    for (std::size_t j = i + 1; j < f.n; ++j) {
      const double v = -std::exp(u[i] + u[j] - 2.0 * f.alpha) / 4.0 * (du[i].rho * du[j].rho + du[i].z * du[j].z);
      f.g[i][j] = f.g[j][i] = v;
    }
  }
  return f;
}

double CurvatureFrame::R(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
  if (a == b || c == d) return 0.0;
  double sign = 1.0;
  if (a > b) std::swap(a, b), sign = -sign;
  if (c > d) std::swap(c, d), sign = -sign;
  if (a == 0 && b == 1) return (c == 0 && d == 1) ? sign * r_rzrz : 0.0;
  if (c == 0 && d == 1) return 0.0;
  if (a >= 2) {
    // torus-torus pair
    return (c == a && d == b) ? sign * g[a - 2][b - 2] : 0.0;
  }
  // (a, b) = (rho or z, phi_i)
  if (c >= 2 || d != b) return 0.0;
  const std::size_t i = b - 2;
  if (a == 0 && c == 0) return sign * f1[i];
  if (a == 1 && c == 1) return sign * f3[i];
  return sign * f2[i];
}

std::vector<Endomorphism> curvature_endomorphisms(const CurvatureFrame& f) {
  const std::size_t N = f.n + 2;
  auto name = [](std::size_t a) { return a == 0 ? std::string("rho") : a == 1 ? std::string("z") : "phi" + std::to_string(a - 1); };
  std::vector<std::pair<std::size_t, std::size_t>> pairs = {{0, 1}};
  for (std::size_t i = 2; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) pairs.emplace_back(i, j);
  for (std::size_t i = 2; i < N; ++i) pairs.emplace_back(0, i);
  for (std::size_t i = 2; i < N; ++i) pairs.emplace_back(1, i);

  std::vector<Endomorphism> out;
  for (const auto& [x, y] : pairs) {
    Endomorphism e;
    e.label = "R(" + name(x) + "," + name(y) + ")";
    e.x = x;
    e.y = y;
    e.matrix = SquareMatrix(N);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) e.matrix(a, b) = f.R(a, b, x, y);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Endomorphism> curvature_endomorphisms(const SolitonSolution& solution, double rho, double z) {
  return curvature_endomorphisms(curvature_components(solution, rho, z));
}

HolonomyRank holonomy_rank(const std::vector<Endomorphism>& matrices, const std::vector<double>& metric_diagonal,
                           double rel, double abs_floor) {
  HolonomyRank out;
  const std::size_t N = metric_diagonal.size();
  const std::size_t dim = N * (N - 1) / 2;
  out.dimension = static_cast<int>(dim);
  if (matrices.empty()) return out;
  Eigen::MatrixXd A(matrices.size(), dim);
  for (std::size_t r = 0; r < matrices.size(); ++r) {
    const auto& e = matrices[r];
    if (e.matrix.dim != N) throw InputError("holonomy_rank: matrix dimension mismatch");
    const double sxy = std::sqrt(std::abs(metric_diagonal[e.x] * metric_diagonal[e.y]));
    std::size_t col = 0;
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = a + 1; b < N; ++b) {
        const double s = std::sqrt(std::abs(metric_diagonal[a] * metric_diagonal[b])) * sxy;
        A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col++)) = e.matrix(a, b) / s;
      }
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double cut = std::max(rel * smax, abs_floor);
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    out.singular_values.push_back(sv(k));
    if (sv(k) > cut) ++out.rank;
  }
  return out;
}

HolonomyRank holonomy_rank(const SolitonSolution& solution, double rho, double z, double rel) {
  const CurvatureFrame f = curvature_components(solution, rho, z);
  return holonomy_rank(curvature_endomorphisms(f), f.metric_diagonal, rel);
}

std::array<FieldSample, 9> sample_stencil(const SolitonSolution& solution, double rho, double z, double h,
                                          const AlphaPerturbation& perturb) {
  if (!(h > 0.0) || !(rho > 2.0 * h)) throw DomainError("stencil needs rho > 2h > 0");
  const AlphaField& a = solution.alpha();
  const double centre = a(rho, z);
  std::array<FieldSample, 9> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double r = rho + (i - 1) * h;
      const double zz = z + (j - 1) * h;
      FieldSample& s = out[static_cast<std::size_t>(i * 3 + j)];
      s.alpha = centre + a.integrate_segment({rho, z}, {r, zz});
      if (perturb) s.alpha += perturb(r, zz);
      for (const auto& jet : solution.potentials().jets(r, zz)) s.u.push_back(jet.full_value(r));
    }
  }
  return out;
}

FdCurvature fd_slice_curvature(const SolitonSolution& solution, double rho, double z, double h,
                               const AlphaPerturbation& perturb) {
  const auto samples = sample_stencil(solution, rho, z, h, perturb);
  MetricStencil st;
  st.h = h;
  for (std::size_t k = 0; k < 9; ++k) {
    std::vector<double> d = {std::exp(2.0 * samples[k].alpha), std::exp(2.0 * samples[k].alpha)};
    for (double u : samples[k].u) d.push_back(std::exp(u));
    st.g[k] = SquareMatrix::diagonal(d);
  }
  return fd_curvature(st);
}

double ricci_residual(const SolitonSolution& solution, double rho, double z, double h,
                      const AlphaPerturbation& perturb) {
  return fd_slice_curvature(solution, rho, z, h, perturb).normalized_ricci_max();
}

double expected_flux(const SolitonSolution& solution, std::size_t rod) {
  const double n = static_cast<double>(solution.n());
  return 2.0 * std::pow(2.0 * std::numbers::pi, n - 1.0) * std::exp(0.5 * solution.lapse_constant()) *
         solution.diagram().length(rod);
}

double homology_flux(const SolitonSolution& solution, std::size_t form_rod, std::size_t contour_rod, double radius,
                     ContourKind kind) {
  const RodDiagram& d = solution.diagram();
  const PotentialSet& p = solution.potentials();
  if (form_rod >= d.size() || contour_rod >= d.size()) throw InputError("homology_flux: rod index out of range");
  if (!(radius > 0.0)) throw InputError("homology_flux: radius must be positive");
  const auto family = d.family_of(form_rod);
  if (!family) throw InputError("homology_flux: form rod must be an axis rod with basis structure");

  const double L = d.period;
  const std::size_t R = d.size();
  double zs, ze;
  if (kind == ContourKind::enclosing) {
    const std::size_t prev = (contour_rod + R - 1) % R;
    const std::size_t next = (contour_rod + 1) % R;
    zs = d.midpoint(prev) - (prev > contour_rod ? L : 0.0);
    ze = d.midpoint(next) + (next < contour_rod ? L : 0.0);
    if (R == 1) zs = d.start(0) - 0.5 * L, ze = d.end(0) + 0.5 * L;
  } else {
    const double len = d.length(contour_rod);
    zs = d.start(contour_rod) + 0.1 * len;
    ze = d.end(contour_rod) - 0.1 * len;
  }
  for (double zz : {zs, ze}) {
    if (p.corner_distance(zz) == 0.0 || p.over_family_rod(*family, zz)) {
      throw InputError("homology_flux: contour meets the axis on a rod of the form's family");
    }
  }

  const ChargedInterval I{d.start(form_rod), d.end(form_rod)};
  constexpr double tol = 1e-13;
  auto bottom = [&](double r) { return r == 0.0 ? 0.0 : -r * green_log_grad(I, r, zs).z; };
  auto right = [&](double zz) { return radius * green_log_grad(I, radius, zz).rho; };
  auto top = [&](double r) { return r == 0.0 ? 0.0 : r * green_log_grad(I, r, ze).z; };
  const double sum = integrate_gk15(bottom, 0.0, radius, tol).value + integrate_gk15(right, zs, ze, tol).value +
                     integrate_gk15(top, 0.0, radius, tol).value;
  const double n = static_cast<double>(solution.n());
  return std::exp(0.5 * solution.lapse_constant()) * std::pow(2.0 * std::numbers::pi, n - 1.0) * sum;
}

}  // namespace gsol
