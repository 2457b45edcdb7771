#pragma once

#include <cstddef>
#include <vector>

#include "gsol/balance.hpp"
#include "gsol/solution.hpp"

namespace gsol::test {

inline SolitonSolution soliton(std::size_t n, double L, const std::vector<std::size_t>& families) {
  return SolitonSolution(RodDiagram::equal_rods(n, L, families));
}

inline SolitonSolution soliton(std::size_t n, double L, const std::vector<std::size_t>& families,
                               const std::vector<Fraction>& lengths) {
  return SolitonSolution(RodDiagram::from_families(n, L, families, lengths));
}

inline SolitonSolution basic(std::size_t n, double L = 1.0) { return SolitonSolution(RodDiagram::basic(n, L)); }

inline SolitonSolution balanced(const SolitonSolution& s) { return balance(s); }

// Families are 0-based: {0, 1, 0, 2} is e1, e2, e1, e3.
inline const std::vector<std::size_t> kE1E2E1E3{0, 1, 0, 2};
inline const std::vector<std::size_t> kE1E2E1E3E4{0, 1, 0, 2, 3};

}  // namespace gsol::test
