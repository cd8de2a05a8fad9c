#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vast/filters.hpp"
#include "vast/groups.hpp"
#include "vast/report.hpp"

namespace vast {

/// f: G → X with finite fibers.  Labels are codes in X.
struct FiniteToOneMap {
  std::string name;
  std::function<Code(Code)> apply;
  std::function<std::vector<Code>(Code)> fiber;
  bool is_identity = false;

  static FiniteToOneMap identity();
};

/// A vast set M_n with an arity bound that holds for m-subsets of the
/// filter level F_n (a bound for all of G is also fine).
struct VastStage {
  DecidableSet set;
  std::uint64_t j_bound = 0;
};
using VastFamily = std::function<VastStage(std::size_t)>;

/// ξ = ∪_{n<count} S_n with S_n = { g^-1 h : g, h ∈ f^-1(T_n), f(g) ≠ f(h),
/// g^-1 h ∈ M'_n }, where M'_n = ∩_{k<=n} (M_k ∩ M_k^-1).  Certifies
/// `tail-outside-M` (ξ \ M'_n inside earlier stages) and `filter-pairs`
/// (a pair g, h ∈ F_k per base index k).  Throws
/// Error(vastness_bound_violated) when the representatives of T_n carry no
/// good pair despite |T_n| >= J_bound(n), and Error(precondition_violated)
/// when |T_n| < J_bound(n).
SequenceReport build_xi_statement11(const EnumeratedGroup& g, const FiniteToOneMap& f, const NonrapidWitness& w,
                                    const VastFamily& m, std::size_t count);

struct Statement21Options {
  std::size_t count = 0;
  std::size_t depth = 512;  // γ uses g with code < depth
  /// Filter base F_n = U_n ∩ Y; all of G when absent.  A finite Y is
  /// enumerated first.
  std::optional<DecidableSet> y;
  std::optional<FiniteToOneMap> map;  // identity when absent
  bool certify_tail_outside_u = true;
  std::string construction = "s21";
};

/// The γ-enumeration construction: W_k = G \ g_k U_{n_k+1} for the k-th
/// coset of γ (diagonal by n + code(g), ties by n), M_k = W_0 ∩ ... ∩ W_k ∩ H_k.
/// Certificates: tail-outside-M, filter-pairs, coset-finite, tail-outside-H
/// and, when requested, tail-outside-U.
SequenceReport build_xi_statement21(const NeighborhoodBase& base, const NeighborhoodBase& h,
                                    const Statement21Options& options);

/// The first `count` cosets of γ.
std::vector<GammaEntry> enumerate_gamma(const NeighborhoodBase& base, std::size_t count, std::size_t depth);

/// Arity bound for M_k relative to the container U_k: the pigeonhole bound
/// [U_k : U_k ∩ U_r ∩ H_k] + 1 with r = max_{i<=k}(n_i + 1), where the
/// subgroup core U_r ∩ H_k lies inside M_k, capped by the Ramsey bound folded
/// over the arities (4 for each W_i, [G:H_k] + 1 for H_k).  Saturates at
/// UINT64_MAX.
std::vector<std::uint64_t> stage_arity_bounds(const NeighborhoodBase& base, const NeighborhoodBase& h,
                                              const std::vector<GammaEntry>& gamma);

/// Statement-2.1 run with f = identity and F_n = U_n.  With totally_bounded,
/// each U_n needs a finite index (syndetic certificate) and tail-outside-U is
/// certified.  Throws Error(precondition_violated) when an index is missing.
SequenceReport build_xi_theorem22(const NeighborhoodBase& base_m, const NeighborhoodBase& h, bool totally_bounded,
                                  std::size_t count, std::size_t depth = 512);

/// Y partitioned into finite blocks (the listed blocks are taken as all of Y).
/// Runs the γ construction for the partition map (block i ↦ 2i, singleton
/// c ↦ 2c + 1) with F_n = U_n ∩ Y and no subgroup constraint, then keeps
/// ξ ∩ Z, Z = ∪_{i≠j} Y_i^-1 Y_j.  Certifies `subset-of-Z` and `meets-U`.
/// Throws Error(closure_precondition_failed) when some U_n, n < count,
/// misses Y.
SequenceReport build_xi_partition(const NeighborhoodBase& base, const std::vector<std::vector<Code>>& blocks,
                                  std::size_t count, std::size_t depth = 512);

struct TranslateKernel {
  std::vector<std::size_t> theta;
  std::vector<std::size_t> k_prime;
  std::vector<std::size_t> k;
  Verdict disjoint;        // the translates x_n U_{k_n} are pairwise disjoint
  Verdict finite_meeting;  // each g U_{θ(g)+2} meets finitely many translates
};

/// Isolating indices k'_n, the minimal increasing k_n > max(k'_n, θ(x_n)),
/// and both verdicts for the first `count` elements.  Throws
/// Error(isolation_not_certified) when no k <= depth isolates x_n.
TranslateKernel disjoint_translates(const SequenceReport& xi, const NeighborhoodBase& base, std::size_t count,
                                    std::size_t depth = 512);

/// 𝒴_n = { X ∈ ξ : min X ∈ [a_n, b_n] } from one interval split with
/// f(n) = 1 + max(h(n), n), h(n) = max{ max X : min X <= n }.
struct BlockFamily {
  std::vector<std::vector<Code>> blocks;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> intervals;      // (a_n, b_n)
  std::vector<std::pair<std::uint64_t, std::uint64_t>> support_range;  // [a_n, a_{n+1} - 1]
  Side side = Side::left;
  bool prepended_zero = false;  // {0} was added so that min X_0 = 0
};

/// `xi` must be nonempty and nondecreasing in min support, and not
/// constant in it.  Elements with min support below `complete_below`
/// must all be present (default: the largest min support in the list);
/// only blocks with b_n < complete_below are returned, at most `k`.
BlockFamily lemma31_blocks(std::vector<Code> xi, UltraChooser& chooser, std::size_t k,
                           std::optional<std::size_t> complete_below = std::nullopt);

struct Theorem31Result {
  SequenceReport source;  // ξ' from the subgroup-chain run
  SequenceReport first;   // ξ = ∪ 𝒴_n
  SequenceReport second;  // ξ'' from the partition run
  BlockFamily blocks;
};

/// Stages of the internal subgroup-chain run; 60 keeps every support below
/// the 64-bit code width.
inline constexpr std::size_t kTheorem31Stages = 60;

/// The two-disjoint-sequences pipeline on the Boolean group of finite
/// subsets of ω with the dyadic chain.  Certifies `disjoint` and
/// `meets-U` for both sequences.
Theorem31Result theorem31_pair(UltraChooser& chooser, std::size_t count, std::size_t depth = 512);

}  // namespace vast
