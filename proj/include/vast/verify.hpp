#pragma once

#include <cstddef>
#include <vector>

#include "vast/filters.hpp"
#include "vast/report.hpp"

namespace vast {

/// Every computed point x_i is isolated: some n has ξ ∩ x_i U_n = {x_i} on
/// the prefix.  Exact when the base is a subgroup chain, the report carries
/// a tail level t and the isolating n satisfies n <= t with x_i ∉ U_n, so
/// that x_i U_n misses U_t and no uncomputed element can enter.  Repeated
/// elements or the identity in ξ are violations.
TopologyVerdict check_discrete(const SequenceReport& xi, const NeighborhoodBase& base, std::size_t depth);

/// ξ meets U_n for every n < depth.  A depth beyond the report's levels is
/// clamped to them with a warning.
TopologyVerdict check_limit_point(const SequenceReport& xi, const NeighborhoodBase& base, std::size_t depth);

struct CosetMeeting {
  Code g = 0;
  std::size_t theta = 0;
  std::vector<Code> hits;  // computed elements of ξ ∩ g U_{θ(g)+1}
  Verdict verdict;         // finiteness of ξ ∩ g U_{θ(g)+1}
};

/// ξ ∩ g U_{θ(g)+1} for one g.  Exact when the tail level t >= θ(g) + 1, or
/// when an enumerated coset g' U_{n+1} of the construction contains it and
/// the coset-finite certificate is exact.  Throws Error(undefined_stratum)
/// for the identity.
CosetMeeting coset_meeting(const SequenceReport& xi, const NeighborhoodBase& base, Code g);

/// coset_meeting for every non-identity code below depth.  Throws
/// Error(cannot_certify) when the report has neither a tail level nor a
/// coset-finite certificate.
TopologyVerdict check_unique_limit(const SequenceReport& xi, const NeighborhoodBase& base, std::size_t depth);

/// No code in both computed prefixes.
TopologyVerdict check_disjoint(const SequenceReport& xi1, const SequenceReport& xi2);

/// Appends the discrete, limit-point and unique-limit verdicts, using the
/// report's depth for codes and its levels for the limit-point range.
void attach_verdicts(SequenceReport& xi, const NeighborhoodBase& base);

}  // namespace vast
