#include "vast/largeness.hpp"

#include <algorithm>
#include <limits>

#include "vast/error.hpp"

namespace vast {

namespace {

// Vertices a, b are joined when {a, b} is a good pair, i.e. a^-1 b lies in the
// symmetric core.  The arity condition fails exactly when the graph has an
// independent set of size m.
using Adjacency = std::vector<SubsetMask>;

Adjacency good_pair_graph(const FiniteGroup& g, const SubsetMask& core) {
  Adjacency adj;
  adj.reserve(g.order());
  for (Elem a = 0; a < g.order(); ++a) {
    SubsetMask row = g.translate(a, core);
    row.reset(a);
    adj.push_back(std::move(row));
  }
  return adj;
}

// Depth-first search for the lexicographically first m-subset of `candidates`
// that is independent (want_clique == false) or a clique (want_clique == true).
bool search(const Adjacency& adj, SubsetMask candidates, std::size_t m, bool want_clique, std::vector<Elem>& chosen) {
  if (chosen.size() == m) return true;
  for (auto c = candidates.next(0); c; c = candidates.next(*c + 1)) {
    if (chosen.size() + candidates.count() < m) return false;
    candidates.reset(*c);
    SubsetMask rest = want_clique ? (candidates & adj[*c]) : (candidates - adj[*c]);
    chosen.push_back(*c);
    if (search(adj, std::move(rest), m, want_clique, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

std::optional<std::vector<Elem>> first_subset(const Adjacency& adj, const SubsetMask& universe, std::size_t m, bool want_clique) {
  std::vector<Elem> chosen;
  if (search(adj, universe, m, want_clique, chosen)) return chosen;
  return std::nullopt;
}

std::vector<Elem> first_elements(std::size_t m) {
  std::vector<Elem> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = static_cast<Elem>(i);
  return p;
}

}  // namespace

SubsetMask symmetric_core(const FiniteGroup& g, const SubsetMask& m_set) { return m_set & g.inverse(m_set); }

PhiResult phi_m_holds(const FiniteGroup& g, const SubsetMask& m_set, std::size_t m) {
  if (m < 2) throw Error(ErrorKind::invalid_arity, "arity " + std::to_string(m) + " < 2");
  if (m > g.order()) return {true, std::nullopt};
  if (!m_set.test(g.identity())) return {false, first_elements(m)};
  const auto adj = good_pair_graph(g, symmetric_core(g, m_set));
  auto p = first_subset(adj, g.all(), m, false);
  if (p) return {false, std::move(p)};
  return {true, std::nullopt};
}

VastnessReport compute_j(const FiniteGroup& g, const SubsetMask& m_set, std::optional<std::size_t> m_max) {
  VastnessReport r;
  r.m_max = m_max.value_or(g.order());
  r.checked_group_order = g.order();
  std::optional<std::vector<Elem>> last_refuted;
  for (std::size_t m = 2; m <= r.m_max; ++m) {
    auto phi = phi_m_holds(g, m_set, m);
    if (phi.holds) {
      r.vast = true;
      r.j = m;
      r.counterexample = std::move(last_refuted);
      return r;
    }
    last_refuted = std::move(phi.counterexample);
  }
  r.counterexample = std::move(last_refuted);
  return r;
}

namespace {

bool cover_search(const std::vector<SubsetMask>& translates, const std::vector<std::vector<Elem>>& covering, SubsetMask& covered,
                  std::size_t budget, std::size_t m_size, std::vector<Elem>& chosen) {
  auto u = (~covered).next(0);
  if (!u) return true;
  if (budget == 0) return false;
  if ((~covered).count() > budget * m_size) return false;
  for (Elem t : covering[*u]) {
    SubsetMask saved = covered;
    covered |= translates[t];
    chosen.push_back(t);
    if (cover_search(translates, covering, covered, budget - 1, m_size, chosen)) return true;
    chosen.pop_back();
    covered = std::move(saved);
  }
  return false;
}

}  // namespace

SyndeticCertificate compute_i(const FiniteGroup& g, const SubsetMask& m_set) {
  if (m_set.none()) throw Error(ErrorKind::not_syndetic, "empty set has no covering translates");
  std::vector<SubsetMask> translates;
  translates.reserve(g.order());
  for (Elem t = 0; t < g.order(); ++t) translates.push_back(g.translate(t, m_set));
  // covering[u] = every t with u ∈ t·M, ascending.
  std::vector<std::vector<Elem>> covering(g.order());
  for (Elem t = 0; t < g.order(); ++t) {
    for (Elem u : translates[t].elements()) covering[u].push_back(t);
  }
  const std::size_t m_size = m_set.count();
  for (std::size_t k = 1; k <= g.order(); ++k) {
    SubsetMask covered(g.order());
    std::vector<Elem> chosen;
    if (cover_search(translates, covering, covered, k, m_size, chosen)) {
      std::sort(chosen.begin(), chosen.end());
      return {chosen.size(), chosen};
    }
  }
  throw Error(ErrorKind::not_syndetic, "no cover found");  // unreachable: T = G always covers
}

std::uint64_t ramsey_m_for(std::uint64_t j, std::uint64_t n) {
  if (j < 2 || n < 2) throw Error(ErrorKind::invalid_arity, "ramsey bound needs J >= 2 and n >= 2");
  const std::uint64_t big_n = std::max(j, n);
  const std::uint64_t k = big_n - 1;  // C(2k, k)
  if (k > 40) throw Error(ErrorKind::bound_overflow, "C(" + std::to_string(2 * k) + "," + std::to_string(k) + ") exceeds 64 bits");
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) c = c * (k + i) / i;
  if (c > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorKind::bound_overflow, "C(" + std::to_string(2 * k) + "," + std::to_string(k) + ") exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

std::optional<std::vector<Elem>> find_qn(const FiniteGroup& g, const SubsetMask& m_set, std::span<const Elem> p, std::size_t n) {
  SubsetMask universe = g.mask(p);
  if (universe.count() < n) return std::nullopt;
  if (n == 0) return std::vector<Elem>{};
  if (!m_set.test(g.identity())) return std::nullopt;
  const auto adj = good_pair_graph(g, symmetric_core(g, m_set));
  return first_subset(adj, universe, n, true);
}

namespace {

std::vector<Elem> greedy_separated(const FiniteGroup& g, const SubsetMask& core, const SubsetMask& s) {
  std::vector<Elem> q;
  for (Elem x : s.elements()) {
    bool separated = std::none_of(q.begin(), q.end(), [&](Elem y) { return core.test(g.op(g.inv(y), x)); });
    if (separated) q.push_back(x);
  }
  return q;
}

}  // namespace

SyndeticCover syndetic_cover(const FiniteGroup& g, const SubsetMask& m_set, const SubsetMask& s) {
  const auto report = compute_j(g, m_set);
  if (!report.vast) throw Error(ErrorKind::precondition_violated, "cover needs a vast set");
  const SubsetMask core = symmetric_core(g, m_set);

  SyndeticCover cover;
  cover.j = report.j;
  cover.left = greedy_separated(g, core, s);
  std::vector<Elem> r = greedy_separated(g, core, g.inverse(s));
  for (Elem& x : r) x = g.inv(x);
  std::sort(r.begin(), r.end());
  cover.right = std::move(r);

  SubsetMask left_cover(g.order()), right_cover(g.order());
  for (Elem q : cover.left) left_cover |= g.translate(q, m_set);
  for (Elem x : cover.right) right_cover |= g.translate_right(m_set, x);
  cover.left_covers = s.is_subset_of(left_cover);
  cover.right_covers = s.is_subset_of(right_cover);
  return cover;
}

ProductFreeCheck check_product_free_complement(const FiniteGroup& g, const SubsetMask& w) {
  ProductFreeCheck r;
  r.premise_holds = !w.intersects(quotient_set(g, w, w));
  r.conclusion_holds = phi_m_holds(g, ~w, 4).holds;
  return r;
}

std::uint64_t j_bound_intersection(std::uint64_t j1, std::uint64_t j2) { return ramsey_m_for(j2, j1); }

PhiResult phi_m_holds_on_prefix(const EnumeratedGroup& g, const DecidableSet& m_set, std::size_t m, Code prefix) {
  if (m < 2) throw Error(ErrorKind::invalid_arity, "arity " + std::to_string(m) + " < 2");
  const auto n = static_cast<std::size_t>(prefix);
  if (m > n) return {true, std::nullopt};
  if (!m_set.contains(g.identity())) return {false, first_elements(m)};
  Adjacency adj(n, SubsetMask(n));
  for (Code a = 0; a < prefix; ++a) {
    const Code ai = g.inv(a);
    for (Code b = a + 1; b < prefix; ++b) {
      const Code d = g.op(ai, b);
      if (m_set.contains(d) && m_set.contains(g.inv(d))) {
        adj[a].set(static_cast<Elem>(b));
        adj[b].set(static_cast<Elem>(a));
      }
    }
  }
  auto p = first_subset(adj, SubsetMask::full(n), m, false);
  if (p) return {false, std::move(p)};
  return {true, std::nullopt};
}

}  // namespace vast
