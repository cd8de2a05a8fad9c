#pragma once

// Brute-force reference implementations used only by the tests.  They share
// no code with the library's search routines: subsets are plain bitmasks over
// groups of order <= 16 and every condition is checked from its definition.

#include <cstdint>
#include <optional>
#include <vector>

#include "vast/groups.hpp"

namespace oracle {

using vast::Elem;
using vast::FiniteGroup;

inline std::uint32_t bits_of(const vast::SubsetMask& m) {
  std::uint32_t b = 0;
  for (Elem e : m.elements()) b |= 1U << e;
  return b;
}

inline bool in(std::uint32_t set, Elem x) { return (set >> x) & 1U; }

/// Q = {a, b}: Q^-1 Q = {e, a^-1 b, b^-1 a} inside M.
inline bool good_pair(const FiniteGroup& g, std::uint32_t m, Elem a, Elem b) {
  return in(m, g.identity()) && in(m, g.op(g.inv(a), b)) && in(m, g.op(g.inv(b), a));
}

inline bool phi(const FiniteGroup& g, std::uint32_t m, std::size_t arity) {
  const std::size_t n = g.order();
  for (std::uint32_t p = 0; p < (1U << n); ++p) {
    if (static_cast<std::size_t>(__builtin_popcount(p)) != arity) continue;
    bool found = false;
    for (Elem a = 0; a < n && !found; ++a) {
      if (!in(p, a)) continue;
      for (Elem b = a + 1; b < n && !found; ++b) {
        if (in(p, b) && good_pair(g, m, a, b)) found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Arity scanned downward from |G|: the least m such that every arity >= m holds.
inline std::optional<std::size_t> j_downward(const FiniteGroup& g, std::uint32_t m) {
  std::optional<std::size_t> j;
  for (std::size_t k = g.order(); k >= 2; --k) {
    if (!phi(g, m, k)) break;
    j = k;
  }
  return j;
}

inline std::size_t i_brute(const FiniteGroup& g, std::uint32_t m) {
  const std::size_t n = g.order();
  const std::uint32_t full = (n == 32) ? ~0U : ((1U << n) - 1);
  std::size_t best = n + 1;
  for (std::uint32_t t = 1; t < (1U << n); ++t) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(t));
    if (size >= best) continue;
    std::uint32_t cover = 0;
    for (Elem a = 0; a < n; ++a) {
      if (!in(t, a)) continue;
      for (Elem x = 0; x < n; ++x) {
        if (in(m, x)) cover |= 1U << g.op(a, x);
      }
    }
    if (cover == full) best = size;
  }
  return best;
}

/// True iff some 2-colouring of K_n has no monochromatic triangle.
inline bool triangle_free_colouring_exists(unsigned n) {
  std::vector<std::pair<unsigned, unsigned>> edges;
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  auto colour = [&](std::uint32_t c, unsigned a, unsigned b) {
    if (a > b) std::swap(a, b);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i] == std::make_pair(a, b)) return (c >> i) & 1U;
    return 0U;
  };
  for (std::uint32_t c = 0; c < (1U << edges.size()); ++c) {
    bool mono = false;
    for (unsigned a = 0; a < n && !mono; ++a)
      for (unsigned b = a + 1; b < n && !mono; ++b)
        for (unsigned d = b + 1; d < n && !mono; ++d)
          mono = colour(c, a, b) == colour(c, b, d) && colour(c, a, b) == colour(c, a, d);
    if (!mono) return true;
  }
  return false;
}

}  // namespace oracle
