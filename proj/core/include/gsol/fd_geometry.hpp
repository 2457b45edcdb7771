#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace gsol {

/// Dense row-major square matrix.
struct SquareMatrix {
  std::size_t dim = 0;
  std::vector<double> data;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t d) : dim(d), data(d * d, 0.0) {}
  static SquareMatrix diagonal(const std::vector<double>& d);

  double& operator()(std::size_t i, std::size_t j) { return data[i * dim + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * dim + j]; }
};

/// Metric components on a 3x3 stencil in the (rho, z) plane; the remaining
/// coordinates are cyclic. Entry (i, j) holds the metric at
/// (rho + (i - 1) h, z + (j - 1) h).
struct MetricStencil {
  double h = 0.0;
  std::array<SquareMatrix, 9> g;

  SquareMatrix& at(int i, int j) { return g[static_cast<std::size_t>(i * 3 + j)]; }
  [[nodiscard]] const SquareMatrix& at(int i, int j) const { return g[static_cast<std::size_t>(i * 3 + j)]; }
};

/// Curvature of a metric depending on the first two coordinates only, from
/// second-order central differences of its components.
struct FdCurvature {
  std::size_t dim = 0;
  SquareMatrix metric;
  std::vector<double> riemann;  ///< R_abcd, all indices down
  SquareMatrix ricci;           ///< R_bd = R^a_bad

  [[nodiscard]] double R(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return riemann[((a * dim + b) * dim + c) * dim + d];
  }
  /// max |R_ab| / sqrt|g_aa g_bb|: the Ricci tensor in an orthonormal frame
  /// for diagonal metrics.
  [[nodiscard]] double normalized_ricci_max() const;
};

FdCurvature fd_curvature(const MetricStencil& stencil);

}  // namespace gsol
