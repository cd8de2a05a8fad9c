#include "vast/groups.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "vast/error.hpp"

namespace vast {

// ---------------------------------------------------------------------------
// SubsetMask

SubsetMask::SubsetMask(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

SubsetMask SubsetMask::full(std::size_t size) {
  SubsetMask m(size);
  std::fill(m.words_.begin(), m.words_.end(), ~std::uint64_t{0});
  m.trim();
  return m;
}

SubsetMask SubsetMask::of(std::size_t size, std::span<const Elem> elements) {
  SubsetMask m(size);
  for (Elem e : elements) {
    if (e >= size) throw Error(ErrorKind::format, "element " + std::to_string(e) + " outside group of order " + std::to_string(size));
    m.set(e);
  }
  return m;
}

SubsetMask SubsetMask::from_bits(std::size_t size, std::uint64_t bits) {
  SubsetMask m(size);
  if (!m.words_.empty()) m.words_[0] = bits;
  m.trim();
  return m;
}

void SubsetMask::trim() {
  if (size_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }
}

std::size_t SubsetMask::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool SubsetMask::none() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool SubsetMask::is_subset_of(const SubsetMask& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

bool SubsetMask::intersects(const SubsetMask& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

std::vector<Elem> SubsetMask::elements() const {
  std::vector<Elem> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto bits = words_[w];
    while (bits) {
      out.push_back(static_cast<Elem>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
      bits &= bits - 1;
    }
  }
  return out;
}

std::optional<Elem> SubsetMask::next(Elem from) const {
  if (from >= size_) return std::nullopt;
  std::size_t w = from >> 6;
  auto bits = words_[w] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (bits) return static_cast<Elem>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
    if (++w == words_.size()) return std::nullopt;
    bits = words_[w];
  }
}

SubsetMask SubsetMask::operator&(const SubsetMask& other) const {
  SubsetMask r = *this;
  r &= other;
  return r;
}

SubsetMask SubsetMask::operator|(const SubsetMask& other) const {
  SubsetMask r = *this;
  r |= other;
  return r;
}

SubsetMask SubsetMask::operator-(const SubsetMask& other) const {
  SubsetMask r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~other.words_[i];
  return r;
}

SubsetMask SubsetMask::operator~() const {
  SubsetMask r = *this;
  for (auto& w : r.words_) w = ~w;
  r.trim();
  return r;
}

SubsetMask& SubsetMask::operator|=(const SubsetMask& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

SubsetMask& SubsetMask::operator&=(const SubsetMask& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

std::string format_elements(std::span<const Elem> elements) {
  std::string out = "{";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(elements[i]);
  }
  return out + "}";
}

std::string format_mask(const SubsetMask& mask) { return format_elements(mask.elements()); }

// ---------------------------------------------------------------------------
// FiniteGroup

namespace {

std::string cell(std::size_t i, std::size_t j) {
  return "cell (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

FiniteGroup make_from_table(const std::vector<std::vector<Elem>>& rows, std::string name) {
  const std::size_t n = rows.size();
  if (n == 0 || n > kMaxFiniteOrder) {
    throw Error(ErrorKind::invalid_order, "table order " + std::to_string(n));
  }
  FiniteGroup g;
  g.order_ = n;
  g.name_ = std::move(name);
  g.table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorKind::not_a_group, "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] >= n) throw Error(ErrorKind::not_a_group, cell(i, j) + " out of range");
      g.table_[i * n + j] = rows[i][j];
    }
  }

  // Latin square: each row and column a permutation.
  std::vector<std::size_t> seen(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), SIZE_MAX);
    for (std::size_t j = 0; j < n; ++j) {
      auto v = g.table_[i * n + j];
      if (seen[v] != SIZE_MAX) throw Error(ErrorKind::not_a_group, cell(i, j) + " repeats value " + std::to_string(v) + " in its row");
      seen[v] = j;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(seen.begin(), seen.end(), SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i) {
      auto v = g.table_[i * n + j];
      if (seen[v] != SIZE_MAX) throw Error(ErrorKind::not_a_group, cell(i, j) + " repeats value " + std::to_string(v) + " in its column");
      seen[v] = i;
    }
  }

  std::optional<Elem> identity;
  for (Elem e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x) ok = g.op(e, x) == x && g.op(x, e) == x;
    if (ok) identity = e;
  }
  if (!identity) throw Error(ErrorKind::not_a_group, "no two-sided identity");
  g.identity_ = *identity;

  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      for (Elem c = 0; c < n; ++c) {
        if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c))) {
          throw Error(ErrorKind::not_a_group, "associativity fails on triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
        }
      }
    }
  }

  g.inverses_.resize(n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (g.op(a, b) == g.identity_) {
        g.inverses_[a] = b;
        break;
      }
    }
  }
  return g;
}

FiniteGroup make_cyclic(std::size_t n) {
  if (n == 0 || n > kMaxFiniteOrder) throw Error(ErrorKind::invalid_order, "cyclic order " + std::to_string(n));
  std::vector<std::vector<Elem>> rows(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = static_cast<Elem>((i + j) % n);
  }
  return make_from_table(rows, "cyclic:" + std::to_string(n));
}

FiniteGroup make_boolean(unsigned k) {
  if (k == 0 || k >= 64 || (std::size_t{1} << k) > kMaxFiniteOrder) {
    throw Error(ErrorKind::invalid_order, "boolean rank " + std::to_string(k));
  }
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::vector<Elem>> rows(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = static_cast<Elem>(i ^ j);
  }
  return make_from_table(rows, "boolean:" + std::to_string(k));
}

FiniteGroup make_dihedral(std::size_t n) {
  if (n == 0 || 2 * n > kMaxFiniteOrder) throw Error(ErrorKind::invalid_order, "dihedral n " + std::to_string(n));
  const std::size_t order = 2 * n;
  std::vector<std::vector<Elem>> rows(order, std::vector<Elem>(order));
  // Index r < n is the rotation r^r; index n + r is r^r s.  With s r = r^-1 s:
  // r^a * r^b = r^(a+b), r^a * r^b s = r^(a+b) s, r^a s * r^b = r^(a-b) s,
  // r^a s * r^b s = r^(a-b).
  for (std::size_t x = 0; x < order; ++x) {
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t a = x % n, b = y % n;
      const bool xs = x >= n, ys = y >= n;
      const std::size_t rot = xs ? (a + n - b) % n : (a + b) % n;
      rows[x][y] = static_cast<Elem>(rot + ((xs != ys) ? n : 0));
    }
  }
  return make_from_table(rows, "dihedral:" + std::to_string(n));
}

FiniteGroup make_symmetric(std::size_t n) {
  std::size_t factorial = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    factorial *= i;
    if (factorial > kMaxFiniteOrder) break;
  }
  if (n == 0 || factorial > kMaxFiniteOrder) throw Error(ErrorKind::invalid_order, "symmetric n " + std::to_string(n));
  std::vector<std::vector<unsigned>> perms;
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 0U);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<unsigned>, Elem> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index.emplace(perms[i], static_cast<Elem>(i));

  std::vector<std::vector<Elem>> rows(perms.size(), std::vector<Elem>(perms.size()));
  std::vector<unsigned> composed(n);
  for (std::size_t i = 0; i < perms.size(); ++i) {
    for (std::size_t j = 0; j < perms.size(); ++j) {
      // (p_i * p_j)(x) = p_i(p_j(x))
      for (std::size_t x = 0; x < n; ++x) composed[x] = perms[i][perms[j][x]];
      rows[i][j] = index.at(composed);
    }
  }
  return make_from_table(rows, "sym:" + std::to_string(n));
}

SubsetMask FiniteGroup::mask(std::span<const Elem> elements) const { return SubsetMask::of(order_, elements); }

SubsetMask FiniteGroup::inverse(const SubsetMask& m) const {
  SubsetMask r(order_);
  for (Elem x : m.elements()) r.set(inverses_[x]);
  return r;
}

SubsetMask FiniteGroup::translate(Elem t, const SubsetMask& m) const {
  SubsetMask r(order_);
  for (Elem x : m.elements()) r.set(op(t, x));
  return r;
}

SubsetMask FiniteGroup::translate_right(const SubsetMask& m, Elem t) const {
  SubsetMask r(order_);
  for (Elem x : m.elements()) r.set(op(x, t));
  return r;
}

// ---------------------------------------------------------------------------
// Cayley files

namespace {

std::size_t parse_index(const std::string& token, std::size_t line) {
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      (token.size() > 1 && token[0] == '0') || token.size() > 9) {
    throw Error(ErrorKind::format, "line " + std::to_string(line) + ": bad index '" + token + "'");
  }
  return static_cast<std::size_t>(std::stoul(token));
}

std::vector<std::string> split_single_spaces(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(' ', start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

FiniteGroup parse_cayley(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  if (lines.empty()) throw Error(ErrorKind::format, "empty Cayley file");
  const std::size_t n = parse_index(lines[0], 1);
  if (n == 0 || n > kMaxFiniteOrder) throw Error(ErrorKind::format, "line 1: order " + std::to_string(n) + " out of range");
  if (lines.size() != n + 1) {
    throw Error(ErrorKind::format, "expected " + std::to_string(n + 1) + " lines, found " + std::to_string(lines.size()));
  }
  std::vector<std::vector<Elem>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto tokens = split_single_spaces(lines[i + 1]);
    if (tokens.size() != n) {
      throw Error(ErrorKind::format, "line " + std::to_string(i + 2) + ": expected " + std::to_string(n) + " indices, found " + std::to_string(tokens.size()));
    }
    for (const auto& t : tokens) {
      auto v = parse_index(t, i + 2);
      if (v >= n) throw Error(ErrorKind::format, "line " + std::to_string(i + 2) + ": index " + t + " >= order");
      rows[i].push_back(static_cast<Elem>(v));
    }
  }
  return make_from_table(rows, "cayley");
}

FiniteGroup read_cayley_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::format, "cannot open " + path);
  auto g = parse_cayley(in);
  return g;
}

void write_cayley(std::ostream& out, const FiniteGroup& g) {
  out << g.order() << '\n';
  for (Elem i = 0; i < g.order(); ++i) {
    auto r = g.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? " " : "") << r[j];
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Subsets and subgroups

SubsetMask quotient_set(const FiniteGroup& g, const SubsetMask& a, const SubsetMask& b) {
  SubsetMask out(g.order());
  const auto bs = b.elements();
  for (Elem x : a.elements()) {
    const Elem xi = g.inv(x);
    for (Elem y : bs) out.set(g.op(xi, y));
  }
  return out;
}

bool is_subgroup(const FiniteGroup& g, const SubsetMask& h) {
  if (!h.test(g.identity())) return false;
  const auto elems = h.elements();
  for (Elem a : elems) {
    for (Elem b : elems) {
      if (!h.test(g.op(g.inv(a), b))) return false;
    }
  }
  return true;
}

SubsetMask generated_subgroup(const FiniteGroup& g, const SubsetMask& generators) {
  SubsetMask h = generators;
  h.set(g.identity());
  std::vector<Elem> frontier = h.elements();
  const auto gens = generators.elements();
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (Elem x : frontier) {
      for (Elem s : gens) {
        Elem y = g.op(x, s);
        if (!h.test(y)) {
          h.set(y);
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return h;
}

std::vector<SubsetMask> subgroups(const FiniteGroup& g) {
  auto key = [](const SubsetMask& m) { return std::make_pair(m.count(), m.elements()); };
  std::set<std::pair<std::size_t, std::vector<Elem>>> found;
  std::vector<SubsetMask> queue{generated_subgroup(g, g.none())};
  std::vector<SubsetMask> all;
  found.insert(key(queue.front()));
  while (!queue.empty()) {
    SubsetMask h = std::move(queue.back());
    queue.pop_back();
    all.push_back(h);
    for (Elem x = 0; x < g.order(); ++x) {
      if (h.test(x)) continue;
      SubsetMask gens = h;
      gens.set(x);
      SubsetMask k = generated_subgroup(g, gens);
      if (found.insert(key(k)).second) queue.push_back(std::move(k));
    }
  }
  std::sort(all.begin(), all.end(), [&](const SubsetMask& a, const SubsetMask& b) { return key(a) < key(b); });
  return all;
}

// ---------------------------------------------------------------------------
// Countable groups

EnumeratedGroup::EnumeratedGroup(std::string name, BinaryOp op, UnaryOp inv, Code identity, Describe describe)
    : name_(std::move(name)), op_(std::move(op)), inv_(std::move(inv)), identity_(identity), describe_(std::move(describe)) {}

AxiomCheck validate_prefix(const EnumeratedGroup& g, std::size_t depth) {
  AxiomCheck r;
  r.depth = depth;
  const Code e = g.identity();
  std::set<std::string> names;
  for (Code x = 0; x < depth; ++x) {
    if (g.op(e, x) != x || g.op(x, e) != x) {
      r.ok = false;
      r.failure = "identity law fails at code " + std::to_string(x);
      return r;
    }
    const Code xi = g.inv(x);
    if (g.op(x, xi) != e || g.op(xi, x) != e) {
      r.ok = false;
      r.failure = "inverse law fails at code " + std::to_string(x);
      return r;
    }
    if (!names.insert(g.describe(x)).second) {
      r.ok = false;
      r.failure = "codec not injective at code " + std::to_string(x);
      return r;
    }
  }
  const Code assoc = std::min<Code>(depth, 48);
  for (Code a = 0; a < assoc; ++a) {
    for (Code b = 0; b < assoc; ++b) {
      const Code ab = g.op(a, b);
      for (Code c = 0; c < assoc; ++c) {
        if (g.op(ab, c) != g.op(a, g.op(b, c))) {
          r.ok = false;
          r.failure = "associativity fails on (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
          return r;
        }
      }
    }
  }
  return r;
}

std::vector<unsigned> support(Code code) {
  std::vector<unsigned> out;
  while (code) {
    out.push_back(static_cast<unsigned>(std::countr_zero(code)));
    code &= code - 1;
  }
  return out;
}

Code code_of(std::span<const unsigned> s) {
  Code c = 0;
  for (unsigned i : s) {
    if (i >= 64) throw Error(ErrorKind::bound_overflow, "support element " + std::to_string(i) + " beyond code width");
    c |= Code{1} << i;
  }
  return c;
}

unsigned min_support(Code code) { return static_cast<unsigned>(std::countr_zero(code)); }
unsigned max_support(Code code) { return 63U - static_cast<unsigned>(std::countl_zero(code)); }

EnumeratedGroup boolean_group_omega() {
  return EnumeratedGroup(
      "boolean-omega", [](Code a, Code b) { return a ^ b; }, [](Code a) { return a; }, 0,
      [](Code c) {
        std::string s = "{";
        auto sup = support(c);
        for (std::size_t i = 0; i < sup.size(); ++i) s += (i ? "," : "") + std::to_string(sup[i]);
        return s + "}";
      });
}

Code zigzag_encode(std::int64_t x) {
  if (x > 0) return 2 * static_cast<Code>(x) - 1;
  return 2 * (Code{0} - static_cast<Code>(x));
}

std::int64_t zigzag_decode(Code c) {
  if (c % 2 == 1) return static_cast<std::int64_t>((c + 1) / 2);
  return -static_cast<std::int64_t>(c / 2);
}

EnumeratedGroup integers() {
  return EnumeratedGroup(
      "integers",
      [](Code a, Code b) {
        std::int64_t s = 0;
        if (__builtin_add_overflow(zigzag_decode(a), zigzag_decode(b), &s) || s == INT64_MIN) {
          throw Error(ErrorKind::bound_overflow, "integer sum leaves the code range");
        }
        return zigzag_encode(s);
      },
      [](Code a) { return zigzag_encode(-zigzag_decode(a)); }, 0, [](Code c) { return std::to_string(zigzag_decode(c)); });
}

// ---------------------------------------------------------------------------
// DecidableSet

DecidableSet::DecidableSet(std::string name, Member member, Next next)
    : name_(std::move(name)), member_(std::move(member)), next_(std::move(next)) {}

DecidableSet DecidableSet::finite(std::string name, std::vector<Code> codes) {
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  auto shared = std::make_shared<const std::vector<Code>>(std::move(codes));
  return DecidableSet(
      std::move(name), [shared](Code c) { return std::binary_search(shared->begin(), shared->end(), c); },
      [shared](Code from) -> std::optional<Code> {
        auto it = std::lower_bound(shared->begin(), shared->end(), from);
        if (it == shared->end()) return std::nullopt;
        return *it;
      });
}

DecidableSet DecidableSet::everything() {
  return DecidableSet("G", [](Code) { return true; }, [](Code from) -> std::optional<Code> { return from; });
}

std::optional<Code> DecidableSet::next_from(Code from) const {
  if (next_) return next_(from);
  for (Code c = from, steps = 0; steps < kScanBudget; ++c, ++steps) {
    if (member_(c)) return c;
    if (c == ~Code{0}) break;
  }
  return std::nullopt;
}

std::vector<Code> DecidableSet::first(std::size_t n, Code from) const {
  std::vector<Code> out;
  out.reserve(n);
  Code cur = from;
  while (out.size() < n) {
    auto c = next_from(cur);
    if (!c) break;
    out.push_back(*c);
    if (*c == ~Code{0}) break;
    cur = *c + 1;
  }
  return out;
}

DecidableSet intersect(const DecidableSet& a, const DecidableSet& b) {
  return DecidableSet(
      "(" + a.name() + " & " + b.name() + ")", [a, b](Code c) { return a.contains(c) && b.contains(c); },
      [a, b](Code from) -> std::optional<Code> {
        Code cur = from;
        for (Code steps = 0; steps < DecidableSet::kScanBudget; ++steps) {
          auto c = a.next_from(cur);
          if (!c) return std::nullopt;
          if (b.contains(*c)) return c;
          if (*c == ~Code{0}) return std::nullopt;
          cur = *c + 1;
        }
        return std::nullopt;
      });
}

DecidableSet complement(const DecidableSet& a) {
  return DecidableSet("~" + a.name(), [a](Code c) { return !a.contains(c); });
}

DecidableSet inverse_set(const EnumeratedGroup& g, const DecidableSet& a) {
  return DecidableSet("inv(" + a.name() + ")", [g, a](Code c) { return a.contains(g.inv(c)); });
}

DecidableSet translate(const EnumeratedGroup& g, Code x, const DecidableSet& u) {
  const Code xi = g.inv(x);
  return DecidableSet(std::to_string(x) + "*" + u.name(), [g, xi, u](Code c) { return u.contains(g.op(xi, c)); });
}

}  // namespace vast
