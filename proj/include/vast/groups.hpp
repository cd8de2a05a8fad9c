#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vast {

/// Index of an element of a finite group (0-based row/column of the Cayley table).
using Elem = std::uint32_t;

/// Canonical natural-number code of an element of a countable group.
using Code = std::uint64_t;

/// Largest finite group order accepted by the table constructors.
inline constexpr std::size_t kMaxFiniteOrder = 1024;

/// Subset of a finite group, one bit per element index.
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(std::size_t size);

  static SubsetMask full(std::size_t size);
  static SubsetMask of(std::size_t size, std::span<const Elem> elements);
  /// Low `size` bits of `bits`; only valid for size <= 64.
  static SubsetMask from_bits(std::size_t size, std::uint64_t bits);

  std::size_t size() const noexcept { return size_; }
  bool test(Elem i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(Elem i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(Elem i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const;
  bool none() const;
  bool is_subset_of(const SubsetMask& other) const;
  bool intersects(const SubsetMask& other) const;
  std::vector<Elem> elements() const;
  /// Smallest member >= from, if any.
  std::optional<Elem> next(Elem from) const;

  SubsetMask operator&(const SubsetMask& other) const;
  SubsetMask operator|(const SubsetMask& other) const;
  SubsetMask operator-(const SubsetMask& other) const;
  /// Complement within the ambient group.
  SubsetMask operator~() const;
  SubsetMask& operator|=(const SubsetMask& other);
  SubsetMask& operator&=(const SubsetMask& other);
  bool operator==(const SubsetMask& other) const = default;

 private:
  void trim();

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

std::string format_elements(std::span<const Elem> elements);
std::string format_mask(const SubsetMask& mask);

/// A finite group given by its multiplication table. Immutable once built;
/// every constructor validates the Latin-square, identity, inverse and
/// associativity laws.
class FiniteGroup {
 public:
  std::size_t order() const noexcept { return order_; }
  Elem identity() const noexcept { return identity_; }
  Elem op(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Elem inv(Elem a) const { return inverses_[a]; }
  std::span<const Elem> inverses() const { return inverses_; }
  std::span<const Elem> row(Elem a) const {
    return {table_.data() + static_cast<std::size_t>(a) * order_, order_};
  }
  const std::string& name() const noexcept { return name_; }

  SubsetMask all() const { return SubsetMask::full(order_); }
  SubsetMask none() const { return SubsetMask(order_); }
  SubsetMask mask(std::span<const Elem> elements) const;
  SubsetMask inverse(const SubsetMask& m) const;
  /// Left translate t·M.
  SubsetMask translate(Elem t, const SubsetMask& m) const;
  /// Right translate M·t.
  SubsetMask translate_right(const SubsetMask& m, Elem t) const;

  friend FiniteGroup make_from_table(const std::vector<std::vector<Elem>>& rows, std::string name);

 private:
  FiniteGroup() = default;

  std::size_t order_ = 0;
  Elem identity_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverses_;
  std::string name_;
};

FiniteGroup make_from_table(const std::vector<std::vector<Elem>>& rows, std::string name = "table");
FiniteGroup make_cyclic(std::size_t n);
/// (Z/2)^k on codes 0..2^k-1 with bitwise exclusive-or.
FiniteGroup make_boolean(unsigned k);
/// Symmetries of the regular n-gon (order 2n): index r < n is rotation by r,
/// index n + r is the reflection composed with rotation r.
FiniteGroup make_dihedral(std::size_t n);
/// All permutations of {0..n-1} in lexicographic order; index 0 is the identity.
FiniteGroup make_symmetric(std::size_t n);

/// Strict Cayley-table text: first line the order n, then n lines of n
/// single-space-separated indices. Throws Error(format) on any deviation.
FiniteGroup parse_cayley(std::istream& in);
FiniteGroup read_cayley_file(const std::string& path);
void write_cayley(std::ostream& out, const FiniteGroup& g);

/// { a^-1 b : a in A, b in B }
SubsetMask quotient_set(const FiniteGroup& g, const SubsetMask& a, const SubsetMask& b);

bool is_subgroup(const FiniteGroup& g, const SubsetMask& h);
/// Subgroup generated by a set.
SubsetMask generated_subgroup(const FiniteGroup& g, const SubsetMask& generators);
/// Every subgroup, ordered by (size, lowest differing element).
std::vector<SubsetMask> subgroups(const FiniteGroup& g);

// ---------------------------------------------------------------------------
// Countable groups.

/// A countable group presented through natural-number codes.
class EnumeratedGroup {
 public:
  using BinaryOp = std::function<Code(Code, Code)>;
  using UnaryOp = std::function<Code(Code)>;
  using Describe = std::function<std::string(Code)>;

  EnumeratedGroup(std::string name, BinaryOp op, UnaryOp inv, Code identity, Describe describe);

  Code op(Code a, Code b) const { return op_(a, b); }
  Code inv(Code a) const { return inv_(a); }
  Code identity() const noexcept { return identity_; }
  const std::string& name() const noexcept { return name_; }
  std::string describe(Code c) const { return describe_(c); }

 private:
  std::string name_;
  BinaryOp op_;
  UnaryOp inv_;
  Code identity_;
  Describe describe_;
};

struct AxiomCheck {
  bool ok = true;
  std::size_t depth = 0;
  std::string failure;
};

/// Identity and inverse laws on the first `depth` codes, associativity on the
/// first min(depth, 48) codes.
AxiomCheck validate_prefix(const EnumeratedGroup& g, std::size_t depth = 512);

/// Finite subsets of omega under symmetric difference; code = sum of 2^i.
EnumeratedGroup boolean_group_omega();
/// The integers under addition with the zig-zag code 0, 1, -1, 2, -2, ...
EnumeratedGroup integers();

std::vector<unsigned> support(Code code);
Code code_of(std::span<const unsigned> support);
unsigned min_support(Code code);  // code != 0
unsigned max_support(Code code);  // code != 0

Code zigzag_encode(std::int64_t x);
std::int64_t zigzag_decode(Code c);

/// A subset of a countable group: membership test plus an optional fast
/// "least member >= c" enumerator. Without one, enumeration scans codes.
class DecidableSet {
 public:
  using Member = std::function<bool(Code)>;
  using Next = std::function<std::optional<Code>(Code)>;

  /// Codes inspected by a scanning enumerator before it reports a stall.
  static constexpr Code kScanBudget = Code{1} << 22;

  DecidableSet(std::string name, Member member, Next next = {});

  static DecidableSet finite(std::string name, std::vector<Code> codes);
  static DecidableSet everything();

  bool contains(Code c) const { return member_(c); }
  std::optional<Code> next_from(Code from) const;
  /// The first n members in ascending code order (fewer if enumeration stalls).
  std::vector<Code> first(std::size_t n, Code from = 0) const;
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  Member member_;
  Next next_;
};

DecidableSet intersect(const DecidableSet& a, const DecidableSet& b);
DecidableSet complement(const DecidableSet& a);
DecidableSet inverse_set(const EnumeratedGroup& g, const DecidableSet& a);
/// g·U
DecidableSet translate(const EnumeratedGroup& g, Code x, const DecidableSet& u);

}  // namespace vast
