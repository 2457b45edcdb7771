#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gsol {

/// One factor of a product manifold: a sphere S^d or a torus T^d.
struct TopologyFactor {
  enum class Kind { sphere, torus };
  Kind kind = Kind::sphere;
  int dim = 0;

  friend bool operator==(const TopologyFactor&, const TopologyFactor&) = default;
};

/// Cartesian product of spheres and tori, e.g. S^1 x S^2 x T^1.
struct ProductManifold {
  std::vector<TopologyFactor> factors;

  static ProductManifold spheres(std::initializer_list<int> dims);
  ProductManifold& times_torus(int dim);

  friend bool operator==(const ProductManifold&, const ProductManifold&) = default;
};

/// k copies of a product manifold inside a connected sum.
struct SumComponent {
  int multiplicity = 1;
  ProductManifold manifold;

  friend bool operator==(const SumComponent&, const SumComponent&) = default;
};

/// Connected sum of products, optionally with a B^2 x T^k neighbourhood of
/// the asymptotic end removed.
struct TopologyLabel {
  std::vector<SumComponent> components;
  std::optional<int> removed_end_torus_rank;

  /// Unicode rendering, e.g. "[(S²×S⁴) # 2(S³×S³)] \ (B²×T⁴)".
  [[nodiscard]] std::string render() const;

  friend bool operator==(const TopologyLabel&, const TopologyLabel&) = default;
};

std::string render(const ProductManifold& m);

}  // namespace gsol
