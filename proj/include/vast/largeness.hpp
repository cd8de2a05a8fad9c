#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vast/groups.hpp"

namespace vast {

// A set M is vast of arity m when every m-element P contains a pair Q = {a, b}
// with Q^-1 Q inside M; J_M is the least such m.  Internally every test works
// with the symmetric core M ∩ M^-1, which has the same arity.

struct PhiResult {
  bool holds = false;
  /// An m-element set with no good pair; present iff holds is false.
  std::optional<std::vector<Elem>> counterexample;
};

/// Throws Error(invalid_arity) for m < 2.  For m > |G| there is no m-element
/// subset and the condition holds vacuously.
PhiResult phi_m_holds(const FiniteGroup& g, const SubsetMask& m_set, std::size_t m);

struct VastnessReport {
  bool vast = false;
  std::size_t j = 0;       // valid when vast
  std::size_t m_max = 0;   // search cap
  /// Largest refuted arity witness: J-1 when vast with J >= 3, m_max when not vast.
  std::optional<std::vector<Elem>> counterexample;
  std::size_t checked_group_order = 0;
};

/// Smallest m in [2, m_max] with phi_m_holds; m_max defaults to |G|, which
/// makes "not vast" a definite verdict for finite groups.
VastnessReport compute_j(const FiniteGroup& g, const SubsetMask& m_set, std::optional<std::size_t> m_max = std::nullopt);

struct SyndeticCertificate {
  std::size_t i = 0;
  std::vector<Elem> translates;  // |translates| == i and translates·M == G
};

/// Minimum number of left translates of M covering G, by exhaustive search
/// over cover sizes 1, 2, ...  Throws Error(not_syndetic) when M is empty.
SyndeticCertificate compute_i(const FiniteGroup& g, const SubsetMask& m_set);

/// Binomial upper bound C(2N-2, N-1), N = max(j, n), on the diagonal Ramsey
/// number: every 2-coloured complete graph on that many vertices has a
/// monochromatic N-clique.
std::uint64_t ramsey_m_for(std::uint64_t j, std::uint64_t n);

/// Lexicographically first Q ⊆ P, |Q| = n, with Q^-1 Q ⊆ M.
std::optional<std::vector<Elem>> find_qn(const FiniteGroup& g, const SubsetMask& m_set, std::span<const Elem> p, std::size_t n);

struct SyndeticCover {
  std::vector<Elem> left;   // Q ⊆ S with S ⊆ Q·M
  std::vector<Elem> right;  // R ⊆ S with S ⊆ M·R
  std::size_t j = 0;
  bool left_covers = false;
  bool right_covers = false;
};

/// Greedy maximal Q ⊆ S with Q^-1 Q ∩ (M ∩ M^-1) ⊆ {e}, scanning S in
/// ascending order; R is the same construction on S^-1, inverted.  Both
/// have fewer than J_M elements.  Throws Error(precondition_violated) if M
/// is not vast.
SyndeticCover syndetic_cover(const FiniteGroup& g, const SubsetMask& m_set, const SubsetMask& s);

struct ProductFreeCheck {
  bool premise_holds = false;     // W ∩ W^-1 W = ∅
  bool conclusion_holds = false;  // G \ W satisfies the arity-4 condition
  bool violation() const { return premise_holds && !conclusion_holds; }
};

ProductFreeCheck check_product_free_complement(const FiniteGroup& g, const SubsetMask& w);

/// Arity bound for M1 ∩ M2 given arities J1, J2 of vast M1, M2.
std::uint64_t j_bound_intersection(std::uint64_t j1, std::uint64_t j2);

SubsetMask symmetric_core(const FiniteGroup& g, const SubsetMask& m_set);

/// Truncated arity test over a countable group: P ranges over m-subsets of
/// the codes below `prefix`.  A true result only means no counterexample
/// exists among those codes.
PhiResult phi_m_holds_on_prefix(const EnumeratedGroup& g, const DecidableSet& m_set, std::size_t m, Code prefix);

}  // namespace vast
