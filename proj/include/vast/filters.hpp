#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vast/groups.hpp"

namespace vast {

/// A filter presented by a decreasing base n ↦ F_n.
class FilterChain {
 public:
  using Level = std::function<DecidableSet(std::size_t)>;

  FilterChain(std::string name, Level level) : name_(std::move(name)), level_(std::move(level)) {}

  DecidableSet level(std::size_t n) const { return level_(n); }
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  Level level_;
};

/// Decreasing neighbourhoods U_n of the identity in a countable group.  The
/// same type carries plain subgroup chains (H_n), for which separation is
/// not required.
class NeighborhoodBase {
 public:
  using Member = std::function<bool(std::size_t, Code)>;
  using Next = std::function<std::optional<Code>(std::size_t, Code)>;
  /// [G : U_n] for finite-index subgroup chains, saturated at UINT64_MAX.
  using Index = std::function<std::uint64_t(std::size_t)>;

  NeighborhoodBase(std::string name, EnumeratedGroup group, Member member, Next next = {}, Index index = {},
                   bool subgroups = false);

  const std::string& name() const noexcept { return name_; }
  const EnumeratedGroup& group() const noexcept { return group_; }
  bool contains(std::size_t n, Code c) const { return member_(n, c); }
  DecidableSet level(std::size_t n) const;
  FilterChain chain() const;

  /// Every U_n is a subgroup and the chain is nested.
  bool subgroups() const noexcept { return subgroups_; }
  bool has_index() const noexcept { return static_cast<bool>(index_); }
  std::uint64_t index(std::size_t n) const { return index_(n); }

 private:
  std::string name_;
  EnumeratedGroup group_;
  Member member_;
  Next next_;
  Index index_;
  bool subgroups_;
};

/// Subgroups H_n = sets with support in [n, ∞) in the Boolean group of finite
/// subsets of ω; membership is code mod 2^n == 0 and [G : H_n] = 2^n.
NeighborhoodBase dyadic_chain();
/// p^n·Z inside the integers, p >= 2.
NeighborhoodBase padic_chain(std::uint64_t p);
/// H_n = G for all n.
NeighborhoodBase whole_group_chain(const EnumeratedGroup& g);
/// `dyadic`, `z-adic:<p>` or `whole:<group>`; throws Error(format) otherwise.
NeighborhoodBase base_by_name(const std::string& name);

/// Wrap a family of subgroups; closure (a·b^-1 ∈ H_n) and nesting are
/// spot-checked on the first members of each H_n, n < levels.  Throws
/// Error(not_a_subgroup) with the offending pair.
NeighborhoodBase subgroup_chain(const EnumeratedGroup& g, std::string name,
                                std::function<DecidableSet(std::size_t)> h,
                                NeighborhoodBase::Index index = {}, std::size_t levels = 16);

/// As subgroup_chain, and additionally requires every non-identity code
/// below `depth` to be excluded by some H_n, n <= depth.  Throws
/// Error(precondition_violated) naming the first unseparated code.
NeighborhoodBase subgroup_chain_base(const EnumeratedGroup& g, std::string name,
                                     std::function<DecidableSet(std::size_t)> h,
                                     NeighborhoodBase::Index index = {}, std::size_t depth = 512);

struct AxiomResult {
  bool ok = true;
  std::string witness;  // first counterexample when !ok
};

struct BaseValidation {
  std::size_t depth = 0;
  std::size_t levels = 0;  // U_0 .. U_{levels} were inspected
  AxiomResult nested;
  AxiomResult symmetry;
  AxiomResult cube;
  AxiomResult separation;
  bool ok() const { return nested.ok && symmetry.ok && cube.ok && separation.ok; }
};

/// Symmetry, U_{n+1}^3 ⊆ U_n and separation of every non-identity code
/// below depth.  Failures are report entries, never exceptions.
BaseValidation validate_neighborhood_base(const NeighborhoodBase& base, std::size_t depth = 512);
std::string format_validation(const BaseValidation& v);

/// The unique n with x ∈ U_n \ U_{n+1}.  Throws Error(undefined_stratum) for
/// the identity.
std::size_t strata(const NeighborhoodBase& base, Code x);

/// Miller's dual form of nonrapidity: finite T_n with |F ∩ T_n| >= f(n)
/// for every F ⊇ F_n.  T_n holds labels; reps[n] holds one member of F_n
/// per label, so the anchor of T_n is base index n.
struct NonrapidWitness {
  std::string chain;
  std::vector<std::size_t> f;
  std::vector<std::vector<Code>> t;
  std::vector<std::vector<Code>> reps;

  std::size_t count() const { return t.size(); }
};

using SizeFn = std::function<std::size_t(std::size_t)>;
using LabelFn = std::function<Code(Code)>;

/// T_n = the first f(n) non-identity members of F_n.  Throws
/// Error(insufficient_members) when F_n runs out.
NonrapidWitness nonrapid_witness_for_chain(const FilterChain& chain, const SizeFn& f, std::size_t count);
/// T_n = the first f(n) distinct labels of non-identity members of F_n.
NonrapidWitness nonrapid_witness_for_image(const FilterChain& chain, const LabelFn& label, const SizeFn& f,
                                           std::size_t count);
/// One `T[n]: c1 c2 ...` line per n.
void write_witness(std::ostream& out, const NonrapidWitness& w);

enum class Side { left, right };
std::string to_string(Side s);

/// Memoized surrogate for a free ultrafilter on ω.  Only queried partitions
/// are decided.  Decisions are recorded as prefix bitmaps of the chosen set;
/// a later query whose side contains a chosen set (on the prefix) is forced
/// to that side, and a side disjoint from a chosen set is forced away.
/// Conflicting forces raise Error(contradiction).  Not thread-safe.
class UltraChooser {
 public:
  static constexpr Code kPrefix = 512;

  enum class Policy { left, right, min, script };

  struct Decision {
    std::string left_name;
    std::string right_name;
    Side side = Side::left;
    bool forced = false;
  };

  static UltraChooser always_left() { return UltraChooser(Policy::left, {}); }
  static UltraChooser always_right() { return UltraChooser(Policy::right, {}); }
  static UltraChooser min_code() { return UltraChooser(Policy::min, {}); }
  static UltraChooser scripted(std::vector<Side> script) { return UltraChooser(Policy::script, std::move(script)); }
  /// One `left` or `right` per line; blank lines are ignored.
  static UltraChooser from_script_file(const std::string& path);
  /// `left`, `right`, `min` or `script:<path>`.
  static UltraChooser parse(const std::string& spec);

  /// Pick the member of {a, b}; a ∪ b must cover the prefix.
  Side choose(const DecidableSet& a, const DecidableSet& b);

  const std::vector<Decision>& decisions() const noexcept { return decisions_; }
  std::string policy_name() const;
  std::size_t script_consumed() const noexcept { return cursor_; }

 private:
  using Bits = std::vector<std::uint64_t>;

  UltraChooser(Policy policy, std::vector<Side> script) : policy_(policy), script_(std::move(script)) {}

  static Bits bitmap(const DecidableSet& s);

  Policy policy_;
  std::vector<Side> script_;
  std::size_t cursor_ = 0;
  std::map<std::pair<Bits, Bits>, Side> memo_;
  std::vector<Bits> chosen_;
  std::vector<Decision> decisions_;
};

using BigNat = boost::multiprecision::cpp_int;

/// A monotone map φ: ω → ω with φ(n) > n.  Polynomials with nonnegative
/// integer coefficients carry a symbolic certificate of φ(x) > x on all of
/// ω, which lets interval_split reason past the numeric budget.
class Phi {
 public:
  static Phi polynomial(std::vector<std::uint64_t> coefficients);
  static Phi function(std::string name, std::function<BigNat(const BigNat&)> fn);
  /// `n+1`, `2n+1`, `n^2+1`, ... : a sum of terms `a`, `an`, `an^k`, `n^k`.
  static Phi parse(const std::string& text);

  BigNat operator()(const BigNat& x) const { return fn_(x); }
  const std::string& name() const noexcept { return name_; }
  /// φ(x) > x and monotonicity hold for every x ∈ ω.
  bool expanding_everywhere() const noexcept { return expanding_; }

 private:
  Phi(std::string name, std::function<BigNat(const BigNat&)> fn, bool expanding)
      : name_(std::move(name)), fn_(std::move(fn)), expanding_(expanding) {}

  std::string name_;
  std::function<BigNat(const BigNat&)> fn_;
  bool expanding_;
};

/// An element c_i of the split sequence; the value is dropped once it
/// exceeds the numeric budget.
struct SplitPoint {
  std::size_t index = 0;
  std::optional<BigNat> value;
  std::string str() const;
};

struct IntervalSplit {
  Side side = Side::left;
  std::vector<SplitPoint> c;                               // c_0 .. c_{2K+1}
  std::vector<std::pair<SplitPoint, SplitPoint>> intervals;  // (a_n, b_n), n < K
  /// `numeric` when every inequality was checked on materialized values;
  /// `numeric+expanding` when the tail relies on φ's global certificate.
  std::string method;
};

inline constexpr std::size_t kSplitValueBits = 4096;

/// c_0 = 0, c_{i+1} = φ(c_i) + 1; A = ∪[c_{2n}, c_{2n+1}], B = ∪[c_{2n+1}, c_{2n+2}];
/// one chooser query decides the branch.  Verifies a_n < b_n < φ(b_n) < a_{n+1}
/// for n < K.  Throws Error(invalid_phi) when φ(x) <= x or φ decreases at a
/// tested point, Error(bound_overflow) when values outgrow the budget and φ
/// has no global certificate.
IntervalSplit interval_split(UltraChooser& chooser, const Phi& phi, std::size_t k);

/// The two query sets for a split sequence, as subsets of ω.
std::pair<DecidableSet, DecidableSet> split_sets(const Phi& phi);

}  // namespace vast
