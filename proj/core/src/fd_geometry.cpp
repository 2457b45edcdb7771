#include "gsol/fd_geometry.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "gsol/errors.hpp"

namespace gsol {

SquareMatrix SquareMatrix::diagonal(const std::vector<double>& d) {
  SquareMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

double FdCurvature::normalized_ricci_max() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      const double scale = std::sqrt(std::abs(metric(a, a) * metric(b, b)));
      worst = std::max(worst, std::abs(ricci(a, b)) / scale);
    }
  }
  return worst;
}

FdCurvature fd_curvature(const MetricStencil& s) {
  const std::size_t N = s.at(1, 1).dim;
  if (N < 2) throw InputError("fd_curvature needs at least two coordinates");
  for (const auto& m : s.g) {
    if (m.dim != N) throw InputError("fd_curvature: inconsistent stencil dimensions");
  }
  const double h = s.h;
  // dg[e] and ddg[e][f] for e, f in {rho, z}; other derivatives vanish.
  auto idx = [N](std::size_t a, std::size_t b) { return a * N + b; };
  std::vector<double> g(N * N), dg(2 * N * N, 0.0), ddg(4 * N * N, 0.0);
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = 0; b < N; ++b) {
      auto G = [&](int i, int j) { return s.at(i, j)(a, b); };
      const std::size_t k = idx(a, b);
      g[k] = G(1, 1);
      dg[0 * N * N + k] = (G(2, 1) - G(0, 1)) / (2 * h);
      dg[1 * N * N + k] = (G(1, 2) - G(1, 0)) / (2 * h);
      ddg[0 * N * N + k] = (G(2, 1) - 2 * G(1, 1) + G(0, 1)) / (h * h);
      ddg[3 * N * N + k] = (G(1, 2) - 2 * G(1, 1) + G(1, 0)) / (h * h);
      const double mixed = (G(2, 2) - G(2, 0) - G(0, 2) + G(0, 0)) / (4 * h * h);
      ddg[1 * N * N + k] = mixed;
      ddg[2 * N * N + k] = mixed;
    }
  }
  auto D = [&](std::size_t e, std::size_t a, std::size_t b) { return e < 2 ? dg[e * N * N + idx(a, b)] : 0.0; };
  auto DD = [&](std::size_t e, std::size_t f, std::size_t a, std::size_t b) {
    return (e < 2 && f < 2) ? ddg[(e * 2 + f) * N * N + idx(a, b)] : 0.0;
  };

  Eigen::MatrixXd gm(N, N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) gm(a, b) = g[idx(a, b)];
  const Eigen::MatrixXd gi = gm.inverse();

  // Gamma^a_bc and its derivatives d_e Gamma^a_bc.
  auto at3 = [N](std::size_t a, std::size_t b, std::size_t c) { return (a * N + b) * N + c; };
  std::vector<double> gamma(N * N * N, 0.0);
  std::vector<double> dgamma(2 * N * N * N, 0.0);
  // Lowered Christoffel symbols Gamma_dbc and their derivatives.
  std::vector<double> low(N * N * N), dlow(2 * N * N * N);
  for (std::size_t d = 0; d < N; ++d)
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t c = 0; c < N; ++c) {
        low[at3(d, b, c)] = 0.5 * (D(b, d, c) + D(c, d, b) - D(d, b, c));
        for (std::size_t e = 0; e < 2; ++e) {
          dlow[e * N * N * N + at3(d, b, c)] = 0.5 * (DD(e, b, d, c) + DD(e, c, d, b) - DD(e, d, b, c));
        }
      }
  // d_e g^{ad} = -g^{ap} d_e g_pq g^{qd}
  std::vector<Eigen::MatrixXd> dgi(2);
  for (std::size_t e = 0; e < 2; ++e) {
    Eigen::MatrixXd de(N, N);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) de(a, b) = D(e, a, b);
    dgi[e] = -gi * de * gi;
  }
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t c = 0; c < N; ++c) {
        double v = 0.0;
        for (std::size_t d = 0; d < N; ++d) v += gi(a, d) * low[at3(d, b, c)];
        gamma[at3(a, b, c)] = v;
        for (std::size_t e = 0; e < 2; ++e) {
          double w = 0.0;
          for (std::size_t d = 0; d < N; ++d) {
            w += dgi[e](a, d) * low[at3(d, b, c)] + gi(a, d) * dlow[e * N * N * N + at3(d, b, c)];
          }
          dgamma[e * N * N * N + at3(a, b, c)] = w;
        }
      }
  auto dG = [&](std::size_t e, std::size_t a, std::size_t b, std::size_t c) {
    return e < 2 ? dgamma[e * N * N * N + at3(a, b, c)] : 0.0;
  };

  // R^a_bcd = d_c Gamma^a_db - d_d Gamma^a_cb + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb
  std::vector<double> up(N * N * N * N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t c = 0; c < N; ++c)
        for (std::size_t d = 0; d < N; ++d) {
          double v = dG(c, a, d, b) - dG(d, a, c, b);
          for (std::size_t e = 0; e < N; ++e) {
            v += gamma[at3(a, c, e)] * gamma[at3(e, d, b)] - gamma[at3(a, d, e)] * gamma[at3(e, c, b)];
          }
          up[((a * N + b) * N + c) * N + d] = v;
        }

  FdCurvature out;
  out.dim = N;
  out.metric = s.at(1, 1);
  out.riemann.assign(N * N * N * N, 0.0);
  out.ricci = SquareMatrix(N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t c = 0; c < N; ++c)
        for (std::size_t d = 0; d < N; ++d) {
          double v = 0.0;
          for (std::size_t f = 0; f < N; ++f) v += g[idx(a, f)] * up[((f * N + b) * N + c) * N + d];
          out.riemann[((a * N + b) * N + c) * N + d] = v;
        }
  for (std::size_t b = 0; b < N; ++b)
    for (std::size_t d = 0; d < N; ++d) {
      double v = 0.0;
      for (std::size_t a = 0; a < N; ++a) v += up[((a * N + b) * N + a) * N + d];
      out.ricci(b, d) = v;
    }
  return out;
}

}  // namespace gsol
