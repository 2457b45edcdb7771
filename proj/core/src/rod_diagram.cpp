#include "gsol/rod_diagram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gsol/errors.hpp"

namespace gsol {

RodStructure RodStructure::basis(std::size_t n, std::size_t index) {
  if (index >= n) throw InputError("basis index out of range");
  std::vector<std::int64_t> v(n, 0);
  v[index] = 1;
  return RodStructure(std::move(v));
}

bool RodStructure::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t RodStructure::content() const {
  std::int64_t g = 0;
  for (auto x : entries_) g = std::gcd(g, x);
  return g;
}

std::optional<std::size_t> RodStructure::basis_index() const {
  std::optional<std::size_t> idx;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] == 0) continue;
    if (entries_[i] != 1 || idx) return std::nullopt;
    idx = i;
  }
  return idx;
}

std::string RodStructure::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(entries_[i]);
  }
  return s + ")";
}

bool SymmetryDescriptor::is_identity() const {
  for (std::size_t i = 0; i < permutation.size(); ++i) {
    if (permutation[i] != i) return false;
  }
  return true;
}

RodDiagram RodDiagram::from_families(std::size_t n, double period, const std::vector<std::size_t>& families,
                                     const std::vector<Fraction>& lengths) {
  if (families.size() != lengths.size()) throw InputError("families and lengths differ in size");
  RodDiagram d;
  d.n = n;
  d.period = period;
  Fraction at(0);
  for (std::size_t k = 0; k < families.size(); ++k) {
    Rod rod;
    rod.start = at;
    at += lengths[k];
    rod.end = at;
    rod.kind = RodKind::axis;
    rod.structure = RodStructure::basis(n, families[k]);
    d.rods.push_back(std::move(rod));
  }
  return d;
}

RodDiagram RodDiagram::equal_rods(std::size_t n, double period, const std::vector<std::size_t>& families) {
  const auto count = static_cast<std::int64_t>(families.size());
  return from_families(n, period, families, std::vector<Fraction>(families.size(), Fraction(1, count)));
}

RodDiagram RodDiagram::basic(std::size_t n, double period) {
  std::vector<std::size_t> fam(n);
  std::iota(fam.begin(), fam.end(), std::size_t{0});
  return equal_rods(n, period, fam);
}

std::optional<std::size_t> RodDiagram::family_of(std::size_t rod) const {
  const Rod& r = rods.at(rod);
  if (r.kind != RodKind::axis) return std::nullopt;
  return r.structure.basis_index();
}

std::vector<RodStructure> RodDiagram::structures() const {
  std::vector<RodStructure> out;
  out.reserve(rods.size());
  for (const auto& r : rods) out.push_back(r.structure);
  return out;
}

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
}

std::int64_t det2(const RodStructure& v, const RodStructure& w) {
  if (v.size() != w.size()) throw InputError("det2: dimension mismatch " + v.str() + " vs " + w.str());
  if (v.size() < 2) throw InputError("det2: needs n >= 2");
  std::int64_t g = 0;
  for (std::size_t j1 = 0; j1 < v.size(); ++j1) {
    for (std::size_t j2 = j1 + 1; j2 < v.size(); ++j2) {
      const __int128 minor = static_cast<__int128>(v[j1]) * w[j2] - static_cast<__int128>(v[j2]) * w[j1];
      const auto m = static_cast<std::int64_t>(minor < 0 ? -minor : minor);
      g = std::gcd(g, m);
    }
  }
  return g;
}

ValidationReport validate(const RodDiagram& d) {
  ValidationReport report;
  auto add = [&](std::string code, std::string msg) { report.violations.push_back({std::move(code), std::move(msg)}); };

  if (d.n < 1) add("dimension", "torus rank n must be at least 1");
  if (!(d.period > 0.0) || !std::isfinite(d.period)) add("period", "period must be positive and finite");
  if (d.rods.empty()) {
    add("coverage", "diagram has no rods");
    return report;
  }

  if (d.rods.front().start != Fraction(0)) {
    add("coverage", "first rod starts at " + d.rods.front().start.str() + " instead of 0");
  }
  if (d.rods.back().end != Fraction(1)) {
    add("coverage", "last rod ends at " + d.rods.back().end.str() + " instead of 1");
  }
  for (std::size_t k = 0; k < d.rods.size(); ++k) {
    const Rod& r = d.rods[k];
    const std::string id = "rod " + std::to_string(k + 1);
    if (!(r.start < r.end)) add("rod-length", id + " has non-positive length");
    if (k + 1 < d.rods.size()) {
      const Fraction next = d.rods[k + 1].start;
      if (r.end < next) add("coverage", "gap between rod " + std::to_string(k + 1) + " and rod " + std::to_string(k + 2));
      if (r.end > next) add("coverage", "overlap between rod " + std::to_string(k + 1) + " and rod " + std::to_string(k + 2));
    }
    if (r.structure.size() != d.n) {
      add("structure-dim", id + " structure " + r.structure.str() + " does not have n entries");
      continue;
    }
    if (r.kind == RodKind::axis) {
      if (r.structure.is_zero()) {
        add("structure-zero", id + " is an axis rod with zero structure");
      } else if (r.structure.content() != 1) {
        add("structure-gcd", id + " structure " + r.structure.str() + " is not primitive (gcd " +
                                 std::to_string(r.structure.content()) + ")");
      }
    } else if (!r.structure.is_zero()) {
      add("horizon-structure", id + " is a horizon rod with nonzero structure");
    }
  }

  // Junctions, including the periodic one between the last and first rods.
  if (d.rods.size() > 1) {
    for (std::size_t k = 0; k < d.rods.size(); ++k) {
      const Rod& a = d.rods[k];
      const Rod& b = d.rods[(k + 1) % d.rods.size()];
      if (a.kind != RodKind::axis || b.kind != RodKind::axis) continue;
      if (a.structure.size() != d.n || b.structure.size() != d.n) continue;
      const std::string where = "corner between rod " + std::to_string(k + 1) + " and rod " +
                                std::to_string((k + 1) % d.rods.size() + 1);
      if (a.structure == b.structure) {
        add("repeated-structure", where + " joins identical structures " + a.structure.str());
        continue;
      }
      if (d.n >= 2 && det2(a.structure, b.structure) != 1) {
        add("admissibility", where + " has Det2 = " + std::to_string(det2(a.structure, b.structure)));
      }
    }
  }

  if (d.symmetry && report.valid() && !is_symmetry(d, *d.symmetry)) {
    add("symmetry", "declared reflection symmetry does not map the diagram onto itself");
  }
  return report;
}

ProductManifold horizon_topology(const RodStructure& left, const RodStructure& right, std::size_t n) {
  if (left.size() != n || right.size() != n) throw InputError("horizon_topology: structures must have n entries");
  if (n < 2) throw InputError("horizon_topology: needs n >= 2");
  const auto i = left.basis_index();
  const auto j = right.basis_index();
  if (!i || !j) {
    throw InputError("horizon_topology: structures " + left.str() + ", " + right.str() +
                     " are unsupported in the diagonal ansatz");
  }
  ProductManifold m = (*i != *j) ? ProductManifold::spheres({3}) : ProductManifold::spheres({1, 2});
  m.times_torus(static_cast<int>(n) - 2);
  return m;
}

namespace {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::size_t> first_occurrence(const std::vector<std::size_t>& seq) {
  std::vector<std::size_t> map;
  std::vector<std::size_t> out;
  for (auto s : seq) {
    auto it = std::find(map.begin(), map.end(), s);
    if (it == map.end()) {
      map.push_back(s);
      out.push_back(map.size() - 1);
    } else {
      out.push_back(static_cast<std::size_t>(it - map.begin()));
    }
  }
  return out;
}

TopologyLabel single(ProductManifold m, std::size_t n) {
  TopologyLabel t;
  t.components.push_back({1, std::move(m)});
  t.removed_end_torus_rank = static_cast<int>(n);
  return t;
}

TopologyLabel basic_sequence_label(std::size_t n) {
  TopologyLabel t;
  const auto nn = static_cast<std::int64_t>(n);
  for (std::int64_t k = 1; k <= nn - 3; ++k) {
    const auto mult = k * binomial(nn - 2, k + 1);
    if (mult == 0) continue;
    t.components.push_back({static_cast<int>(mult), ProductManifold::spheres({static_cast<int>(2 + k), static_cast<int>(nn - k)})});
  }
  t.removed_end_torus_rank = static_cast<int>(n);
  return t;
}

}  // namespace

std::vector<SliceClassification> classify_slice_topology(const std::vector<RodStructure>& period, std::size_t n) {
  std::vector<SliceClassification> out;
  std::vector<std::size_t> seq;
  for (const auto& s : period) {
    if (s.size() != n) return out;
    const auto idx = s.basis_index();
    if (!idx) return out;
    seq.push_back(*idx);
  }
  if (seq.empty()) return out;

  // A periodic diagram has no preferred starting rod or orientation, so every
  // rotation and reversal is canonicalized and compared.
  std::vector<std::vector<std::size_t>> canon;
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<std::size_t> base = seq;
    if (dir == 1) std::reverse(base.begin(), base.end());
    for (std::size_t r = 0; r < base.size(); ++r) {
      std::vector<std::size_t> rot(base.size());
      for (std::size_t k = 0; k < base.size(); ++k) rot[k] = base[(k + r) % base.size()];
      canon.push_back(first_occurrence(rot));
    }
  }
  auto matches = [&](std::initializer_list<std::size_t> pattern) {
    const std::vector<std::size_t> p(pattern);
    return std::find(canon.begin(), canon.end(), p) != canon.end();
  };
  std::vector<std::size_t> basic(n);
  std::iota(basic.begin(), basic.end(), std::size_t{0});
  const bool is_basic = std::find(canon.begin(), canon.end(), basic) != canon.end();

  if (n == 2) {
    if (matches({0, 1})) out.push_back({"i", single(ProductManifold::spheres({4}), n)});
    if (matches({0, 1, 0, 1})) out.push_back({"i", single(ProductManifold::spheres({2, 2}), n)});
  } else if (n == 3) {
    if (matches({0, 1, 2})) out.push_back({"ii", single(ProductManifold::spheres({5}), n)});
    if (matches({0, 1, 0, 2})) out.push_back({"ii", single(ProductManifold::spheres({2, 3}), n)});
  } else if (n == 4) {
    if (matches({0, 1, 2, 3})) out.push_back({"iii", single(ProductManifold::spheres({3, 3}), n)});
    if (matches({0, 1, 0, 2, 3})) {
      TopologyLabel t;
      t.components.push_back({1, ProductManifold::spheres({2, 4})});
      t.components.push_back({2, ProductManifold::spheres({3, 3})});
      t.removed_end_torus_rank = 4;
      out.push_back({"iii", std::move(t)});
    }
  }
  if (n >= 4 && is_basic) out.push_back({"iv", basic_sequence_label(n)});
  return out;
}

std::string render_classification(const std::vector<SliceClassification>& result) {
  if (result.empty()) return "unclassified";
  std::vector<std::string> labels;
  for (const auto& r : result) {
    auto s = r.label.render();
    if (std::find(labels.begin(), labels.end(), s) == labels.end()) labels.push_back(std::move(s));
  }
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += " | ";
    out += labels[i];
  }
  return out;
}

namespace {

RodStructure permuted(const RodStructure& s, const std::vector<std::size_t>& perm) {
  std::vector<std::int64_t> out(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) out[perm[i]] = s[i];
  return RodStructure(std::move(out));
}

// Index of the rod occupying exactly [start, end), if any.
std::optional<std::size_t> find_rod(const RodDiagram& d, const Fraction& start, const Fraction& end) {
  for (std::size_t k = 0; k < d.rods.size(); ++k) {
    if (d.rods[k].start == start && d.rods[k].end == end) return k;
  }
  return std::nullopt;
}

// Image of rod k under z -> 2c - z, as an interval with start in [0, 1).
std::pair<Fraction, Fraction> reflect(const Rod& r, const Fraction& center) {
  const Fraction len = r.length();
  const Fraction start = (Fraction(2) * center - r.end).wrap_unit();
  return {start, start + len};
}

bool is_permutation(const std::vector<std::size_t>& p) {
  std::vector<bool> seen(p.size(), false);
  for (auto x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

// Relabelling induced by reflecting about the centre, when consistent.
std::optional<std::vector<std::size_t>> induced_permutation(const RodDiagram& d, const Fraction& center) {
  std::vector<std::size_t> perm(d.n);
  std::vector<bool> fixed(d.n, false);
  for (const Rod& r : d.rods) {
    const auto [s, e] = reflect(r, center);
    const auto target = find_rod(d, s, e);
    if (!target) return std::nullopt;
    const auto from = r.structure.basis_index();
    const auto to = d.rods[*target].structure.basis_index();
    if (r.kind != d.rods[*target].kind) return std::nullopt;
    if (r.kind == RodKind::horizon) continue;
    if (!from || !to) continue;  // non-basis rods are only checked with the full test below
    if (fixed[*from] && perm[*from] != *to) return std::nullopt;
    perm[*from] = *to;
    fixed[*from] = true;
  }
  // Families that never occur keep their label when that stays a bijection.
  std::vector<bool> used(d.n, false);
  for (std::size_t i = 0; i < d.n; ++i) {
    if (fixed[i]) used[perm[i]] = true;
  }
  for (std::size_t i = 0; i < d.n; ++i) {
    if (fixed[i]) continue;
    if (!used[i]) {
      perm[i] = i;
      used[i] = true;
      fixed[i] = true;
    }
  }
  for (std::size_t i = 0; i < d.n; ++i) {
    if (fixed[i]) continue;
    for (std::size_t j = 0; j < d.n; ++j) {
      if (!used[j]) {
        perm[i] = j;
        used[j] = true;
        break;
      }
    }
  }
  if (!is_permutation(perm)) return std::nullopt;
  return perm;
}

}  // namespace

bool is_symmetry(const RodDiagram& d, const SymmetryDescriptor& sym) {
  if (sym.permutation.size() != d.n || !is_permutation(sym.permutation)) return false;
  for (const Rod& r : d.rods) {
    const auto [s, e] = reflect(r, sym.center);
    const auto target = find_rod(d, s, e);
    if (!target) return false;
    const Rod& t = d.rods[*target];
    if (t.kind != r.kind) return false;
    if (r.structure.size() != d.n || t.structure.size() != d.n) return false;
    if (!(permuted(r.structure, sym.permutation) == t.structure)) return false;
  }
  return true;
}

std::optional<SymmetryDescriptor> detect_reflection_symmetry(const RodDiagram& d) {
  if (d.rods.empty() || d.n == 0) return std::nullopt;
  std::vector<Fraction> candidates;
  for (const Rod& r : d.rods) candidates.push_back(r.midpoint().wrap_unit());
  for (const Rod& r : d.rods) candidates.push_back(r.start.wrap_unit());

  std::optional<SymmetryDescriptor> fallback;
  for (const Fraction& c : candidates) {
    const auto perm = induced_permutation(d, c);
    if (!perm) continue;
    SymmetryDescriptor sym{c, *perm};
    if (!is_symmetry(d, sym)) continue;
    if (sym.is_identity()) return sym;
    if (!fallback) fallback = sym;
  }
  return fallback;
}

}  // namespace gsol
