#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsol/fraction.hpp"
#include "gsol/topology.hpp"

namespace gsol {

/// Integer vector labelling an axis rod: the torus generator that degenerates
/// there. The zero vector marks a horizon rod.
class RodStructure {
 public:
  RodStructure() = default;
  explicit RodStructure(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {}

  /// Standard basis vector e_{index} (0-based) of Z^n.
  static RodStructure basis(std::size_t n, std::size_t index);
  static RodStructure zero(std::size_t n) { return RodStructure(std::vector<std::int64_t>(n, 0)); }

  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] std::int64_t operator[](std::size_t i) const { return entries_[i]; }
  [[nodiscard]] const std::vector<std::int64_t>& entries() const { return entries_; }

  [[nodiscard]] bool is_zero() const;
  /// gcd of absolute values of the nonzero entries (0 for the zero vector).
  [[nodiscard]] std::int64_t content() const;
  /// 0-based index i when the structure is exactly e_i.
  [[nodiscard]] std::optional<std::size_t> basis_index() const;

  [[nodiscard]] std::string str() const;

  friend bool operator==(const RodStructure&, const RodStructure&) = default;

 private:
  std::vector<std::int64_t> entries_;
};

enum class RodKind { axis, horizon };

/// Interval [start, end) of the axis, with endpoints stored as exact
/// fractions of the period.
struct Rod {
  Fraction start;
  Fraction end;
  RodKind kind = RodKind::axis;
  RodStructure structure;

  [[nodiscard]] Fraction length() const { return end - start; }
  [[nodiscard]] Fraction midpoint() const { return (start + end) / Fraction(2); }
};

/// Reflection z -> 2 z_c - z combined with a relabelling of families.
struct SymmetryDescriptor {
  Fraction center;                   ///< fraction of the period
  std::vector<std::size_t> permutation;  ///< family i maps to permutation[i]

  [[nodiscard]] bool is_identity() const;
  friend bool operator==(const SymmetryDescriptor&, const SymmetryDescriptor&) = default;
};

/// Periodic rod configuration; rods tile [0, 1) in units of the period.
struct RodDiagram {
  std::size_t n = 0;
  double period = 1.0;
  std::vector<Rod> rods;
  std::optional<SymmetryDescriptor> symmetry;

  /// Diagram whose rods carry basis structures e_{family} with the given
  /// lengths (fractions of the period), laid out from z = 0.
  static RodDiagram from_families(std::size_t n, double period,
                                  const std::vector<std::size_t>& families,
                                  const std::vector<Fraction>& lengths);
  /// Equal-length rods with the given family sequence.
  static RodDiagram equal_rods(std::size_t n, double period, const std::vector<std::size_t>& families);
  /// The basic sequence e_1, ..., e_n with equal rods.
  static RodDiagram basic(std::size_t n, double period);

  /// Family (0-based basis index) of rod k, if it is a basis axis rod.
  [[nodiscard]] std::optional<std::size_t> family_of(std::size_t rod) const;
  /// Number of rods in one period.
  [[nodiscard]] std::size_t size() const { return rods.size(); }
  [[nodiscard]] double start(std::size_t k) const { return rods[k].start.to_double() * period; }
  [[nodiscard]] double end(std::size_t k) const { return rods[k].end.to_double() * period; }
  [[nodiscard]] double length(std::size_t k) const { return rods[k].length().to_double() * period; }
  [[nodiscard]] double midpoint(std::size_t k) const { return rods[k].midpoint().to_double() * period; }
  [[nodiscard]] std::vector<RodStructure> structures() const;
};

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  [[nodiscard]] bool valid() const { return violations.empty(); }
  [[nodiscard]] bool has(std::string_view code) const;
};

/// Lists every violated diagram invariant; empty iff the diagram is valid.
ValidationReport validate(const RodDiagram& diagram);

/// gcd of the absolute values of all 2x2 minors of the matrix [v w].
/// Throws InputError on a dimension mismatch or n < 2.
std::int64_t det2(const RodStructure& v, const RodStructure& w);

/// Horizon cross-section bounded by axis rods e_i and e_j in a rank-n torus:
/// S^3 x T^{n-2} for i != j and S^1 x S^2 x T^{n-2} for i == j.
/// Throws InputError when either structure is not a basis vector.
ProductManifold horizon_topology(const RodStructure& left, const RodStructure& right, std::size_t n);

/// One matching family of the quotient-slice classification.
struct SliceClassification {
  std::string family;  ///< "i", "ii", "iii" or "iv"
  TopologyLabel label;
};

/// Topology of the slice quotient for the given rod period. An empty result
/// means the period is not one of the classified families.
std::vector<SliceClassification> classify_slice_topology(const std::vector<RodStructure>& period,
                                                         std::size_t n);
/// Distinct labels of a classification, rendered and joined with " | ";
/// "unclassified" when empty.
std::string render_classification(const std::vector<SliceClassification>& result);

/// Reflection symmetry of the periodic diagram, preferring the identity
/// relabelling and, among equals, the first rod midpoint in rod order.
std::optional<SymmetryDescriptor> detect_reflection_symmetry(const RodDiagram& diagram);

/// True when reflection about the descriptor's centre plus relabelling maps
/// the periodic diagram onto itself.
bool is_symmetry(const RodDiagram& diagram, const SymmetryDescriptor& symmetry);

}  // namespace gsol
