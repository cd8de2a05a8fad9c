#include "vast/filters.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "vast/error.hpp"

namespace vast {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::string str(std::uint64_t v) { return std::to_string(v); }

std::size_t bit_length(const BigNat& x) { return x == 0 ? 0 : boost::multiprecision::msb(x) + 1; }

// p^n, or nullopt once it leaves the signed 64-bit range.
std::optional<std::uint64_t> checked_pow(std::uint64_t p, std::size_t n) {
  unsigned __int128 q = 1;
  for (std::size_t i = 0; i < n; ++i) {
    q *= p;
    if (q > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) return std::nullopt;
  }
  return static_cast<std::uint64_t>(q);
}

}  // namespace

// ---------------------------------------------------------------------------
// Bases and chains

NeighborhoodBase::NeighborhoodBase(std::string name, EnumeratedGroup group, Member member, Next next, Index index,
                                   bool subgroups)
    : name_(std::move(name)),
      group_(std::move(group)),
      member_(std::move(member)),
      next_(std::move(next)),
      index_(std::move(index)),
      subgroups_(subgroups) {}

DecidableSet NeighborhoodBase::level(std::size_t n) const {
  auto member = member_;
  DecidableSet::Next next;
  if (next_) {
    auto nx = next_;
    next = [nx, n](Code from) { return nx(n, from); };
  }
  return DecidableSet(name_ + "[" + std::to_string(n) + "]", [member, n](Code c) { return member(n, c); }, next);
}

FilterChain NeighborhoodBase::chain() const {
  NeighborhoodBase self = *this;
  return FilterChain(name_, [self](std::size_t n) { return self.level(n); });
}

NeighborhoodBase dyadic_chain() {
  auto member = [](std::size_t n, Code c) {
    if (n >= 64) return c == 0;
    return (c & ((Code{1} << n) - 1)) == 0;
  };
  auto next = [](std::size_t n, Code from) -> std::optional<Code> {
    if (from == 0) return Code{0};
    if (n >= 64) return std::nullopt;
    const Code step = Code{1} << n;
    const Code rem = from & (step - 1);
    if (rem == 0) return from;
    const Code up = from - rem + step;
    if (up < from) return std::nullopt;
    return up;
  };
  auto index = [](std::size_t n) { return n >= 64 ? kSaturated : std::uint64_t{1} << n; };
  return NeighborhoodBase("dyadic", boolean_group_omega(), member, next, index, true);
}

NeighborhoodBase padic_chain(std::uint64_t p) {
  if (p < 2) throw Error(ErrorKind::format, "p-adic chain needs p >= 2");
  auto member = [p](std::size_t n, Code c) {
    auto q = checked_pow(p, n);
    const std::int64_t x = zigzag_decode(c);
    if (!q) return x == 0;
    return x % static_cast<std::int64_t>(*q) == 0;
  };
  // Members of qZ in zig-zag order: 0, 2q-1, 2q, 4q-1, 4q, ...
  auto next = [p](std::size_t n, Code from) -> std::optional<Code> {
    if (from == 0) return Code{0};
    auto q = checked_pow(p, n);
    if (!q) return std::nullopt;
    const unsigned __int128 two_q = static_cast<unsigned __int128>(*q) * 2;
    const unsigned __int128 k = from / two_q;
    if (k >= 1 && k * two_q == from) return from;
    const unsigned __int128 up = ((from + 1 + two_q - 1) / two_q) * two_q - 1;
    if (up > std::numeric_limits<Code>::max()) return std::nullopt;
    return static_cast<Code>(up);
  };
  auto index = [p](std::size_t n) {
    auto q = checked_pow(p, n);
    return q ? *q : kSaturated;
  };
  return NeighborhoodBase("z-adic:" + str(p), integers(), member, next, index, true);
}

NeighborhoodBase whole_group_chain(const EnumeratedGroup& g) {
  return NeighborhoodBase(
      "whole:" + g.name(), g, [](std::size_t, Code) { return true; },
      [](std::size_t, Code from) -> std::optional<Code> { return from; }, [](std::size_t) { return std::uint64_t{1}; },
      true);
}

NeighborhoodBase base_by_name(const std::string& name) {
  if (name == "dyadic") return dyadic_chain();
  if (name.rfind("z-adic:", 0) == 0) {
    const std::string digits = name.substr(7);
    if (digits.empty() || digits.size() > 9 || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw Error(ErrorKind::format, "bad base '" + name + "'");
    }
    return padic_chain(std::stoull(digits));
  }
  if (name == "whole:boolean-omega") return whole_group_chain(boolean_group_omega());
  if (name == "whole:integers") return whole_group_chain(integers());
  throw Error(ErrorKind::format, "unknown base '" + name + "'");
}

namespace {

void check_subgroup_family(const EnumeratedGroup& g, const std::string& name,
                           const std::function<DecidableSet(std::size_t)>& h, std::size_t levels) {
  constexpr std::size_t kProbe = 24;
  for (std::size_t n = 0; n <= levels; ++n) {
    const DecidableSet hn = h(n);
    if (!hn.contains(g.identity())) {
      throw Error(ErrorKind::not_a_subgroup, name + "[" + std::to_string(n) + "] misses the identity");
    }
    const auto members = hn.first(kProbe);
    for (Code a : members) {
      for (Code b : members) {
        if (!hn.contains(g.op(a, g.inv(b)))) {
          throw Error(ErrorKind::not_a_subgroup, name + "[" + std::to_string(n) + "] not closed: pair (" + str(a) + "," + str(b) + ")");
        }
      }
    }
    if (n == levels) break;
    for (Code c : h(n + 1).first(kProbe)) {
      if (!hn.contains(c)) {
        throw Error(ErrorKind::not_a_subgroup, name + "[" + std::to_string(n + 1) + "] not inside level " + std::to_string(n) + ": code " + str(c));
      }
    }
  }
}

}  // namespace

NeighborhoodBase subgroup_chain(const EnumeratedGroup& g, std::string name, std::function<DecidableSet(std::size_t)> h,
                                NeighborhoodBase::Index index, std::size_t levels) {
  check_subgroup_family(g, name, h, levels);
  auto member = [h](std::size_t n, Code c) { return h(n).contains(c); };
  auto next = [h](std::size_t n, Code from) { return h(n).next_from(from); };
  return NeighborhoodBase(std::move(name), g, member, next, std::move(index), true);
}

NeighborhoodBase subgroup_chain_base(const EnumeratedGroup& g, std::string name,
                                     std::function<DecidableSet(std::size_t)> h, NeighborhoodBase::Index index,
                                     std::size_t depth) {
  auto base = subgroup_chain(g, std::move(name), std::move(h), std::move(index));
  auto v = validate_neighborhood_base(base, depth);
  if (!v.separation.ok) throw Error(ErrorKind::precondition_violated, "separation fails: " + v.separation.witness);
  if (!v.ok()) throw Error(ErrorKind::precondition_violated, format_validation(v));
  return base;
}

BaseValidation validate_neighborhood_base(const NeighborhoodBase& base, std::size_t depth) {
  BaseValidation v;
  v.depth = depth;
  const auto& g = base.group();
  const Code e = g.identity();

  for (Code c = 0; c < depth && v.separation.ok; ++c) {
    if (c == e) continue;
    std::optional<std::size_t> excluded;
    for (std::size_t n = 0; n <= depth; ++n) {
      if (!base.contains(n, c)) {
        excluded = n;
        break;
      }
    }
    if (!excluded) {
      v.separation.ok = false;
      v.separation.witness = "code " + str(c) + " lies in U_0..U_" + std::to_string(depth);
    } else {
      v.levels = std::max(v.levels, *excluded);
    }
  }
  if (!v.separation.ok) v.levels = std::min<std::size_t>(depth, 8);

  constexpr std::size_t kCubeProbe = 12;
  for (std::size_t n = 0; n <= v.levels; ++n) {
    for (Code c = 0; c < depth; ++c) {
      if (v.symmetry.ok && base.contains(n, c) && !base.contains(n, g.inv(c))) {
        v.symmetry.ok = false;
        v.symmetry.witness = "n=" + std::to_string(n) + " x=" + str(c) + " inverse=" + str(g.inv(c));
      }
      if (v.nested.ok && base.contains(n + 1, c) && !base.contains(n, c)) {
        v.nested.ok = false;
        v.nested.witness = "n=" + std::to_string(n + 1) + " x=" + str(c);
      }
    }
    if (!v.cube.ok) continue;
    const auto probe = base.level(n + 1).first(kCubeProbe);
    for (Code a : probe) {
      for (Code b : probe) {
        const Code ab = g.op(a, b);
        for (Code c : probe) {
          if (v.cube.ok && !base.contains(n, g.op(ab, c))) {
            v.cube.ok = false;
            v.cube.witness = "n=" + std::to_string(n) + " triple=(" + str(a) + "," + str(b) + "," + str(c) + ")";
          }
        }
      }
    }
  }
  return v;
}

std::string format_validation(const BaseValidation& v) {
  std::ostringstream out;
  auto line = [&out](const char* name, const AxiomResult& r) {
    out << name << ' ' << (r.ok ? "pass" : "fail");
    if (!r.ok) out << ' ' << r.witness;
    out << '\n';
  };
  out << "depth=" << v.depth << " levels=" << v.levels << '\n';
  line("nested", v.nested);
  line("symmetry", v.symmetry);
  line("cube", v.cube);
  line("separation", v.separation);
  return out.str();
}

std::size_t strata(const NeighborhoodBase& base, Code x) {
  if (x == base.group().identity()) throw Error(ErrorKind::undefined_stratum, "the identity has no stratum");
  if (!base.contains(0, x)) throw Error(ErrorKind::precondition_violated, "code " + str(x) + " outside U_0");
  constexpr std::size_t kLimit = 4096;
  for (std::size_t n = 0; n < kLimit; ++n) {
    if (!base.contains(n + 1, x)) return n;
  }
  throw Error(ErrorKind::precondition_violated, "code " + str(x) + " not separated within " + std::to_string(kLimit) + " levels");
}

// ---------------------------------------------------------------------------
// Nonrapidity witnesses

NonrapidWitness nonrapid_witness_for_chain(const FilterChain& chain, const SizeFn& f, std::size_t count) {
  return nonrapid_witness_for_image(chain, [](Code c) { return c; }, f, count);
}

NonrapidWitness nonrapid_witness_for_image(const FilterChain& chain, const LabelFn& label, const SizeFn& f,
                                           std::size_t count) {
  NonrapidWitness w;
  w.chain = chain.name();
  for (std::size_t n = 0; n < count; ++n) {
    const std::size_t want = f(n);
    const DecidableSet fn = chain.level(n);
    std::vector<Code> labels;
    std::vector<Code> reps;
    std::set<Code> seen;
    Code cur = 1;
    while (labels.size() < want) {
      auto c = fn.next_from(cur);
      if (!c) break;
      if (seen.insert(label(*c)).second) {
        labels.push_back(label(*c));
        reps.push_back(*c);
      }
      if (*c == std::numeric_limits<Code>::max()) break;
      cur = *c + 1;
    }
    if (labels.size() < want) {
      throw Error(ErrorKind::insufficient_members,
                  "level " + std::to_string(n) + " of " + chain.name() + " yields " + std::to_string(labels.size()) +
                      " of " + std::to_string(want) + " members");
    }
    w.f.push_back(want);
    w.t.push_back(std::move(labels));
    w.reps.push_back(std::move(reps));
  }
  return w;
}

void write_witness(std::ostream& out, const NonrapidWitness& w) {
  for (std::size_t n = 0; n < w.t.size(); ++n) {
    out << "T[" << n << "]:";
    for (Code c : w.t[n]) out << ' ' << c;
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Chooser

std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

UltraChooser UltraChooser::from_script_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::format, "cannot open chooser script '" + path + "'");
  std::vector<Side> script;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (line.empty()) continue;
    if (line == "left") {
      script.push_back(Side::left);
    } else if (line == "right") {
      script.push_back(Side::right);
    } else {
      throw Error(ErrorKind::format, "chooser script line " + std::to_string(number) + ": expected left or right");
    }
  }
  return scripted(std::move(script));
}

UltraChooser UltraChooser::parse(const std::string& spec) {
  if (spec == "left") return always_left();
  if (spec == "right") return always_right();
  if (spec == "min") return min_code();
  if (spec.rfind("script:", 0) == 0 && spec.size() > 7) return from_script_file(spec.substr(7));
  throw Error(ErrorKind::format, "unknown chooser '" + spec + "'");
}

std::string UltraChooser::policy_name() const {
  switch (policy_) {
    case Policy::left:
      return "left";
    case Policy::right:
      return "right";
    case Policy::min:
      return "min";
    case Policy::script:
      return "script";
  }
  return "?";
}

UltraChooser::Bits UltraChooser::bitmap(const DecidableSet& s) {
  Bits bits(kPrefix / 64, 0);
  for (Code c = 0; c < kPrefix; ++c) {
    if (s.contains(c)) bits[c / 64] |= std::uint64_t{1} << (c % 64);
  }
  return bits;
}

namespace {

bool subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & ~b[i]) return false;
  }
  return true;
}

bool disjoint(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & b[i]) return false;
  }
  return true;
}

bool empty(const std::vector<std::uint64_t>& a) {
  return std::all_of(a.begin(), a.end(), [](std::uint64_t w) { return w == 0; });
}

}  // namespace

Side UltraChooser::choose(const DecidableSet& a, const DecidableSet& b) {
  Bits ba = bitmap(a);
  Bits bb = bitmap(b);
  for (std::size_t i = 0; i < ba.size(); ++i) {
    if (~(ba[i] | bb[i]) != 0) {
      throw Error(ErrorKind::precondition_violated, "chooser query " + a.name() + " / " + b.name() + " does not cover the prefix");
    }
  }
  auto key = std::make_pair(ba, bb);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  // A chosen set inside one side forces it; a side disjoint from a chosen set is excluded.
  bool force_left = false;
  bool force_right = false;
  for (const auto& c : chosen_) {
    if (subset(c, ba) || disjoint(c, bb)) force_left = true;
    if (subset(c, bb) || disjoint(c, ba)) force_right = true;
  }
  if (empty(ba)) force_right = true;
  if (empty(bb)) force_left = true;
  if (force_left && force_right) {
    throw Error(ErrorKind::contradiction, "query " + a.name() + " / " + b.name() + " is forced both ways by earlier decisions");
  }

  std::optional<Side> policy_side;
  switch (policy_) {
    case Policy::left:
      policy_side = Side::left;
      break;
    case Policy::right:
      policy_side = Side::right;
      break;
    case Policy::min: {
      auto la = a.next_from(0);
      auto lb = b.next_from(0);
      policy_side = (!lb || (la && *la <= *lb)) ? Side::left : Side::right;
      break;
    }
    case Policy::script:
      if (cursor_ >= script_.size()) {
        throw Error(ErrorKind::chooser_exhausted, "script exhausted after " + std::to_string(cursor_) + " decisions");
      }
      policy_side = script_[cursor_++];
      break;
  }

  Side side = *policy_side;
  const bool forced = force_left || force_right;
  if (forced) {
    const Side required = force_left ? Side::left : Side::right;
    if (policy_ == Policy::script && side != required) {
      throw Error(ErrorKind::contradiction, "script answers " + to_string(side) + " but earlier decisions force " + to_string(required));
    }
    side = required;
  }

  memo_.emplace(std::move(key), side);
  chosen_.push_back(side == Side::left ? ba : bb);
  decisions_.push_back({a.name(), b.name(), side, forced});
  return side;
}

// ---------------------------------------------------------------------------
// φ and interval splitting

Phi Phi::polynomial(std::vector<std::uint64_t> coefficients) {
  while (coefficients.size() > 1 && coefficients.back() == 0) coefficients.pop_back();
  if (coefficients.empty()) coefficients.push_back(0);
  std::string name;
  for (std::size_t k = coefficients.size(); k-- > 0;) {
    const auto a = coefficients[k];
    if (a == 0) continue;
    if (!name.empty()) name += "+";
    if (k == 0 || a != 1) name += std::to_string(a);
    if (k >= 1) name += "n";
    if (k >= 2) name += "^" + std::to_string(k);
  }
  if (name.empty()) name = "0";
  // φ(0) = a_0 must be positive, and some non-constant term gives φ(x) >= x + a_0 for x >= 1.
  const bool nonconstant = std::any_of(coefficients.begin() + 1, coefficients.end(), [](std::uint64_t a) { return a > 0; });
  const bool expanding = coefficients[0] >= 1 && nonconstant;
  auto fn = [coefficients](const BigNat& x) {
    BigNat acc = 0;
    for (std::size_t k = coefficients.size(); k-- > 0;) acc = acc * x + coefficients[k];
    return acc;
  };
  return Phi(name, fn, expanding);
}

Phi Phi::function(std::string name, std::function<BigNat(const BigNat&)> fn) {
  return Phi(std::move(name), std::move(fn), false);
}

Phi Phi::parse(const std::string& text) {
  std::vector<std::uint64_t> coefficients;
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  }
  auto fail = [&text]() { return Error(ErrorKind::format, "cannot parse phi '" + text + "'"); };
  if (compact.empty()) throw fail();
  std::size_t pos = 0;
  while (pos <= compact.size()) {
    const std::size_t plus = compact.find('+', pos);
    const std::string term = compact.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
    if (term.empty()) throw fail();
    std::size_t i = 0;
    std::uint64_t coef = 1;
    bool has_digits = false;
    std::uint64_t digits = 0;
    while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) {
      if (digits > 1'000'000'000ULL) throw fail();
      digits = digits * 10 + static_cast<std::uint64_t>(term[i] - '0');
      has_digits = true;
      ++i;
    }
    if (has_digits) coef = digits;
    std::size_t degree = 0;
    if (i < term.size()) {
      if (term[i] != 'n') throw fail();
      ++i;
      degree = 1;
      if (i < term.size()) {
        if (term[i] != '^' || i + 1 >= term.size()) throw fail();
        const std::string exp = term.substr(i + 1);
        if (exp.size() > 2 || !std::all_of(exp.begin(), exp.end(), [](unsigned char c) { return std::isdigit(c); })) throw fail();
        degree = std::stoul(exp);
        i = term.size();
      }
    } else if (!has_digits) {
      throw fail();
    }
    if (coefficients.size() <= degree) coefficients.resize(degree + 1, 0);
    coefficients[degree] += coef;
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return polynomial(std::move(coefficients));
}

std::string SplitPoint::str() const { return value ? value->str() : "c" + std::to_string(index); }

namespace {

// Lazily extended c-sequence shared by the two query sets.
struct SplitCache {
  Phi phi;
  std::vector<BigNat> c{BigNat(0)};

  // Smallest i with c_i > x, extending as needed.
  std::size_t upper(Code x) {
    const BigNat bx(x);
    while (c.back() <= bx) c.push_back(phi(c.back()) + 1);
    return static_cast<std::size_t>(std::upper_bound(c.begin(), c.end(), bx) - c.begin());
  }
};

}  // namespace

std::pair<DecidableSet, DecidableSet> split_sets(const Phi& phi) {
  auto cache = std::make_shared<SplitCache>(SplitCache{phi});
  // x ∈ [c_i, c_{i+1}] for i = upper - 1; endpoints c_i with i >= 1 also close [c_{i-1}, c_i].
  auto in_side = [cache](Code x, std::size_t parity) {
    const std::size_t i = cache->upper(x) - 1;
    if (i % 2 == parity) return true;
    return i >= 1 && cache->c[i] == BigNat(x);
  };
  DecidableSet a("A(" + phi.name() + ")", [in_side](Code x) { return in_side(x, 0); });
  DecidableSet b("B(" + phi.name() + ")", [in_side](Code x) { return in_side(x, 1); });
  return {a, b};
}

IntervalSplit interval_split(UltraChooser& chooser, const Phi& phi, std::size_t k) {
  auto invalid = [](const std::string& at, const std::string& why) {
    return Error(ErrorKind::invalid_phi, "at n=" + at + ": " + why);
  };
  // Direct probes of the precondition on small arguments.
  for (std::uint64_t n = 0; n <= std::max<std::uint64_t>(k, 16); ++n) {
    const BigNat v = phi(BigNat(n));
    if (v <= n) throw invalid(std::to_string(n), "phi(n) = " + v.str() + " <= n");
    if (n > 0 && v < phi(BigNat(n - 1))) throw invalid(std::to_string(n), "phi decreases");
  }

  IntervalSplit out;
  out.method = "numeric";
  const std::size_t points = 2 * k + 2;  // a_K exists on both branches
  out.c.reserve(points);
  out.c.push_back({0, BigNat(0)});
  for (std::size_t i = 1; i < points; ++i) {
    const auto& prev = out.c.back();
    SplitPoint p{i, std::nullopt};
    if (prev.value) {
      const BigNat fx = phi(*prev.value);
      if (fx <= *prev.value) throw invalid(prev.value->str(), "phi(c) <= c");
      BigNat next = fx + 1;
      if (bit_length(next) < kSplitValueBits) p.value = std::move(next);
    }
    if (!p.value) {
      if (!phi.expanding_everywhere()) {
        throw Error(ErrorKind::bound_overflow, "c_" + std::to_string(i) + " exceeds " + std::to_string(kSplitValueBits) +
                                                   " bits and phi " + phi.name() + " has no global certificate");
      }
      out.method = "numeric+expanding";
    }
    out.c.push_back(std::move(p));
  }

  auto [a, b] = split_sets(phi);
  out.side = chooser.choose(a, b);
  const std::size_t shift = out.side == Side::left ? 0 : 1;
  for (std::size_t n = 0; n < k; ++n) out.intervals.emplace_back(out.c[2 * n + shift], out.c[2 * n + 1 + shift]);

  // a_n < b_n < φ(b_n) < a_{n+1}.  Each b_n is c_i and a_{n+1} is c_{i+1} = φ(c_i) + 1, so the
  // last link is the recurrence itself; the others are checked numerically where values exist
  // and follow from φ(x) > x otherwise.
  for (std::size_t n = 0; n < k; ++n) {
    const auto& [an, bn] = out.intervals[n];
    if (an.value && bn.value) {
      if (!(*an.value < *bn.value)) throw Error(ErrorKind::invalid_phi, "a_n >= b_n at n=" + std::to_string(n));
      const BigNat fb = phi(*bn.value);
      if (!(*bn.value < fb)) throw invalid(bn.value->str(), "phi(b_n) <= b_n");
      const auto& next_a = out.c[bn.index + 1];
      if (next_a.value && !(fb < *next_a.value)) throw Error(ErrorKind::invalid_phi, "phi(b_n) >= a_{n+1} at n=" + std::to_string(n));
    }
    if (!(an.index < bn.index)) throw Error(ErrorKind::invalid_phi, "interval indices out of order at n=" + std::to_string(n));
  }
  return out;
}

}  // namespace vast
