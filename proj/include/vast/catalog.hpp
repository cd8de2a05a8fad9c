#pragma once

#include <string>
#include <vector>

#include "vast/groups.hpp"

namespace vast {

/// Parse `cyclic:n`, `boolean:k`, `dihedral:n`, `sym:n` or `cayley:<path>`.
/// Throws Error(format) on a malformed spec.
FiniteGroup parse_group_spec(const std::string& spec);

/// Cyclic groups of order 2..max_order, Boolean groups (Z/2)^k, dihedral
/// groups D_n for n >= 3 and symmetric groups S_n for n >= 3, all of order
/// at most max_order.
std::vector<FiniteGroup> catalog(std::size_t max_order);

/// Whitespace- or comma-separated element indices, or the word `all`.
SubsetMask parse_subset(const FiniteGroup& g, const std::string& literal);

}  // namespace vast
