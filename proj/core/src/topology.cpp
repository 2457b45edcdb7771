#include "gsol/topology.hpp"

namespace gsol {
namespace {

std::string superscript(int value) {
  static const char* const digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  if (value == 0) return digits[0];
  std::string out;
  std::string dec = std::to_string(value);
  for (char c : dec) out += digits[c - '0'];
  return out;
}

std::string render_factor(const TopologyFactor& f) {
  return (f.kind == TopologyFactor::Kind::sphere ? "S" : "T") + superscript(f.dim);
}

}  // namespace

ProductManifold ProductManifold::spheres(std::initializer_list<int> dims) {
  ProductManifold m;
  for (int d : dims) m.factors.push_back({TopologyFactor::Kind::sphere, d});
  return m;
}

ProductManifold& ProductManifold::times_torus(int dim) {
  if (dim > 0) factors.push_back({TopologyFactor::Kind::torus, dim});
  return *this;
}

std::string render(const ProductManifold& m) {
  std::string out;
  for (std::size_t i = 0; i < m.factors.size(); ++i) {
    if (i) out += "×";
    out += render_factor(m.factors[i]);
  }
  return out;
}

std::string TopologyLabel::render() const {
  std::string body;
  if (components.size() == 1 && components.front().multiplicity == 1) {
    body = gsol::render(components.front().manifold);
  } else {
    body = "[";
    for (std::size_t i = 0; i < components.size(); ++i) {
      const auto& c = components[i];
      if (i) body += " # ";
      if (c.multiplicity != 1) body += std::to_string(c.multiplicity);
      const bool wrap = c.multiplicity != 1 || c.manifold.factors.size() > 1;
      body += wrap ? "(" + gsol::render(c.manifold) + ")" : gsol::render(c.manifold);
    }
    body += "]";
  }
  if (removed_end_torus_rank) {
    body += " \\ (B²×T" + superscript(*removed_end_torus_rank) + ")";
  }
  return body;
}

}  // namespace gsol
