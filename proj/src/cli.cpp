#include "vast/cli.hpp"

#include <CLI11.hpp>

#include <bit>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "vast/catalog.hpp"
#include "vast/constructions.hpp"
#include "vast/error.hpp"
#include "vast/filters.hpp"
#include "vast/largeness.hpp"
#include "vast/report.hpp"
#include "vast/verify.hpp"

namespace vast {

namespace {

// Arity of every subset of one group, indexed by bitmask; nullopt when not vast.
class ArityTable {
 public:
  explicit ArityTable(const FiniteGroup& g) : g_(g), j_(std::size_t{1} << g.order()) {
    const std::uint64_t e_bit = std::uint64_t{1} << g.identity();
    for (std::uint64_t bits = 0; bits < j_.size(); ++bits) {
      if (!(bits & e_bit)) continue;  // e ∉ M: no pair is good
      const auto r = compute_j(g, SubsetMask::from_bits(g.order(), bits));
      if (r.vast) j_[bits] = r.j;
    }
  }

  std::optional<std::size_t> j(std::uint64_t bits) const { return j_[bits]; }
  std::size_t size() const { return j_.size(); }
  const FiniteGroup& group() const { return g_; }

 private:
  const FiniteGroup& g_;
  std::vector<std::optional<std::size_t>> j_;
};

std::uint64_t bits_of(const SubsetMask& m) {
  std::uint64_t b = 0;
  for (Elem e : m.elements()) b |= std::uint64_t{1} << e;
  return b;
}

class Tally {
 public:
  explicit Tally(std::string name) { check_.name = std::move(name); }
  void group() { ++check_.groups; }
  void record(bool ok, const FiniteGroup& g, const std::string& what) {
    ++check_.cases;
    if (ok) return;
    if (check_.failures++ == 0) check_.first_failure = g.name() + " " + what;
  }
  PropCheck done() { return std::move(check_); }

 private:
  PropCheck check_;
};

std::string mask_text(std::uint64_t bits) { return "{" + std::to_string(bits) + "}"; }

void ramsey_cliques(const ArityTable& t, Tally& tally) {
  const auto& g = t.group();
  const std::size_t n = g.order();
  for (std::uint64_t bits = 0; bits < t.size(); ++bits) {
    const auto j = t.j(bits);
    if (!j) continue;
    const std::uint64_t m = ramsey_m_for(*j, 3);
    if (m > n) continue;
    const auto mset = SubsetMask::from_bits(n, bits);
    for (std::uint64_t p = 0; p < t.size(); ++p) {
      if (static_cast<std::uint64_t>(std::popcount(p)) != m) continue;
      const auto elems = SubsetMask::from_bits(n, p).elements();
      tally.record(find_qn(g, mset, elems, 3).has_value(), g, "M=" + mask_text(bits) + " P=" + mask_text(p));
    }
  }
}

void symmetry_monotonicity(const ArityTable& t, Tally& tally) {
  const auto& g = t.group();
  const std::size_t n = g.order();
  for (std::uint64_t bits = 0; bits < t.size(); ++bits) {
    const auto j = t.j(bits);
    if (!j) continue;
    const auto m = SubsetMask::from_bits(n, bits);
    const auto inv = bits_of(g.inverse(m));
    const auto core = bits_of(symmetric_core(g, m));
    tally.record(t.j(inv) == j && t.j(core) == j, g, "M=" + mask_text(bits));
    for (Elem x = 0; x < n; ++x) {
      const std::uint64_t bigger = bits | (std::uint64_t{1} << x);
      if (bigger == bits) continue;
      const auto jl = t.j(bigger);
      tally.record(jl && *jl <= *j, g, "M=" + mask_text(bits) + " x=" + std::to_string(x));
    }
  }
}

void intersections(const ArityTable& t, Tally& tally) {
  const auto& g = t.group();
  std::vector<std::uint64_t> vast_sets;
  for (std::uint64_t bits = 0; bits < t.size(); ++bits) {
    if (t.j(bits)) vast_sets.push_back(bits);
  }
  for (std::size_t a = 0; a < vast_sets.size(); ++a) {
    for (std::size_t b = a; b < vast_sets.size(); ++b) {
      const auto m1 = vast_sets[a];
      const auto m2 = vast_sets[b];
      const std::uint64_t bound = j_bound_intersection(*t.j(m1), *t.j(m2));
      const auto ji = t.j(m1 & m2);
      // Beyond |G| the arity condition is vacuous, so "not vast up to |G|" agrees with the bound.
      const bool ok = ji ? *ji <= bound : bound > g.order();
      tally.record(ok, g, "M1=" + mask_text(m1) + " M2=" + mask_text(m2));
    }
  }
}

void product_free(const ArityTable& t, Tally& tally) {
  const auto& g = t.group();
  for (std::uint64_t w = 0; w < t.size(); ++w) {
    const auto r = check_product_free_complement(g, SubsetMask::from_bits(g.order(), w));
    tally.record(!r.violation(), g, "W=" + mask_text(w));
  }
}

void quotient_of_syndetic(const ArityTable& t, Tally& tally) {
  const auto& g = t.group();
  for (std::uint64_t s = 1; s < t.size(); ++s) {
    const auto sm = SubsetMask::from_bits(g.order(), s);
    const std::size_t i = compute_i(g, sm).i;
    const auto j = t.j(bits_of(quotient_set(g, sm, sm)));
    tally.record(j ? *j <= i + 1 : i + 1 > g.order(), g, "S=" + mask_text(s));
  }
}

void syndetic_below_vast(const ArityTable& t, Tally& tally) {
  const auto& g = t.group();
  for (std::uint64_t bits = 0; bits < t.size(); ++bits) {
    const auto j = t.j(bits);
    if (!j) continue;
    const auto m = SubsetMask::from_bits(g.order(), bits);
    const auto cover = syndetic_cover(g, m, g.all());
    const bool ok = compute_i(g, m).i < *j && cover.left_covers && cover.right_covers && cover.left.size() < *j &&
                    cover.right.size() < *j;
    tally.record(ok, g, "M=" + mask_text(bits));
  }
}

void finite_index_subgroups(const ArityTable& t, Tally& tally) {
  const auto& g = t.group();
  for (const auto& h : subgroups(g)) {
    const std::size_t k = g.order() / h.count();
    const auto j = t.j(bits_of(h));
    tally.record(j ? *j <= k + 1 : k + 1 > g.order(), g, "H=" + mask_text(bits_of(h)));
  }
}

void nonvast_syndetic(const ArityTable& t, Tally& tally) {
  const auto& g = t.group();
  if (g.name().rfind("boolean:", 0) != 0) return;
  for (const auto& h : subgroups(g)) {
    if (2 * h.count() != g.order()) continue;
    const auto m = g.all() - h;
    tally.record(compute_i(g, m).i == 2 && !t.j(bits_of(m)), g, "H=" + mask_text(bits_of(h)));
  }
}

}  // namespace

std::vector<PropCheck> run_prop_suite(std::size_t order_bound) {
  if (order_bound > kMaxSweepOrder) {
    throw Error(ErrorKind::precondition_violated, "order bound " + std::to_string(order_bound) + " needs 2^" +
                                                      std::to_string(order_bound) + " subsets per group; use at most " +
                                                      std::to_string(kMaxSweepOrder));
  }
  using Check = void (*)(const ArityTable&, Tally&);
  const std::vector<std::pair<std::string, Check>> checks = {
      {"ramsey-cliques", ramsey_cliques},
      {"symmetry-monotonicity", symmetry_monotonicity},
      {"intersection", intersections},
      {"product-free-complement", product_free},
      {"quotient-of-syndetic", quotient_of_syndetic},
      {"syndetic-below-vast", syndetic_below_vast},
      {"finite-index-subgroups", finite_index_subgroups},
      {"nonvast-syndetic-example", nonvast_syndetic},
  };
  std::vector<Tally> tallies;
  for (const auto& [name, fn] : checks) tallies.emplace_back(name);
  for (const auto& g : catalog(order_bound)) {
    const ArityTable table(g);
    for (std::size_t c = 0; c < checks.size(); ++c) {
      tallies[c].group();
      checks[c].second(table, tallies[c]);
    }
  }
  std::vector<PropCheck> out;
  for (auto& t : tallies) out.push_back(t.done());
  return out;
}

namespace {

NeighborhoodBase base_for_group(const std::string& group) {
  if (group == "boolean-omega") return dyadic_chain();
  if (group.rfind("z-adic:", 0) == 0) return base_by_name(group);
  throw Error(ErrorKind::format, "unknown countable group '" + group + "' (boolean-omega or z-adic:<p>)");
}

// M_n = U_n with F_n = U_n: any two members of U_n differ inside U_n.
SequenceReport run_s11(const NeighborhoodBase& base, std::size_t count, std::size_t depth) {
  const auto witness = nonrapid_witness_for_chain(base.chain(), [](std::size_t) { return std::size_t{2}; }, count);
  VastFamily family = [&base](std::size_t n) { return VastStage{base.level(n), 2}; };
  auto r = build_xi_statement11(base.group(), FiniteToOneMap::identity(), witness, family, count);
  r.base = base.name();
  r.depth = depth;
  r.levels = count;
  if (base.subgroups()) r.tail = count;
  r.notes.push_back("vast-sets U_n arity 2");
  return r;
}

void write_reports(const std::vector<SequenceReport>& reports, const std::string& path, std::ostream& out) {
  const std::string text = serialize(reports);
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::format, "cannot write '" + path + "'");
  file << text;
  if (!file.flush()) throw Error(ErrorKind::format, "write failed for '" + path + "'");
  out << "wrote " << path << " (" << reports.size() << (reports.size() == 1 ? " report)" : " reports)") << '\n';
}

std::size_t witness_size(const std::string& f, std::size_t n) {
  if (f == "2^n") {
    if (n >= 40) throw Error(ErrorKind::bound_overflow, "2^" + std::to_string(n) + " members requested");
    return std::size_t{1} << n;
  }
  const auto v = Phi::parse(f)(BigNat(n));
  if (v > 1'000'000) throw Error(ErrorKind::bound_overflow, f + " at n=" + std::to_string(n) + " is too large");
  return static_cast<std::size_t>(v);
}

struct Options {
  std::string group_spec;
  std::string set_literal;
  std::size_t order_bound = 8;
  std::string pipeline;
  std::string group = "boolean-omega";
  std::size_t count = 10;
  std::size_t depth = 512;
  std::string chooser;
  std::string out_path;
  std::string chain = "dyadic";
  std::string f = "n+1";
  std::string phi = "n+1";
  std::size_t k = 10;
};

int cmd_vast(const Options& o, std::ostream& out) {
  const auto g = parse_group_spec(o.group_spec);
  const auto m = parse_subset(g, o.set_literal);
  const auto r = compute_j(g, m);
  if (r.vast) {
    out << "J=" << r.j << '\n';
  } else {
    out << "not-vast m_max=" << r.m_max << '\n';
  }
  return kExitOk;
}

int cmd_verify_props(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.order_bound > kMaxSweepOrder) {
    err << "refused: --order-bound " << o.order_bound << " would sweep 2^" << o.order_bound
        << " subsets per group; use --order-bound " << kMaxSweepOrder << " or less\n";
    return kExitUsage;
  }
  const auto checks = run_prop_suite(o.order_bound);
  bool failed = false;
  out << std::left << std::setw(26) << "property" << std::setw(8) << "groups" << std::setw(12) << "cases" << "failures\n";
  for (const auto& c : checks) {
    out << std::left << std::setw(26) << c.name << std::setw(8) << c.groups << std::setw(12) << c.cases << c.failures;
    if (c.failures) out << "  first: " << c.first_failure;
    out << '\n';
    failed = failed || c.failures > 0;
  }
  out << (failed ? "FAILED" : "all passed") << '\n';
  return failed ? kExitViolation : kExitOk;
}

int cmd_construct(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.pipeline == "t31") {
    if (o.chooser.empty()) {
      err << "construct t31 needs --chooser {left|right|min|script:<path>}\n";
      return kExitUsage;
    }
    if (o.group != "boolean-omega") {
      err << "construct t31 runs on boolean-omega only\n";
      return kExitUsage;
    }
  }
  std::optional<UltraChooser> chooser;
  if (!o.chooser.empty()) chooser = UltraChooser::parse(o.chooser);
  const auto base = base_for_group(o.group);

  std::vector<SequenceReport> reports;
  if (o.pipeline == "s11") {
    reports.push_back(run_s11(base, o.count, o.depth));
  } else if (o.pipeline == "s21") {
    Statement21Options opts;
    opts.count = o.count;
    opts.depth = o.depth;
    reports.push_back(build_xi_statement21(base, base, opts));
  } else if (o.pipeline == "t22") {
    reports.push_back(build_xi_theorem22(base, base, true, o.count, o.depth));
  } else {
    auto pair = theorem31_pair(*chooser, o.count, o.depth);
    reports.push_back(std::move(pair.first));
    reports.push_back(std::move(pair.second));
  }
  for (auto& r : reports) {
    if (r.label.empty()) r.label = "xi";
    attach_verdicts(r, base);
  }
  if (reports.size() == 2) {
    const auto d = check_disjoint(reports[0], reports[1]);
    for (auto& r : reports) r.verdicts.push_back(d);
  }
  write_reports(reports, o.out_path, out);
  const bool violated = std::any_of(reports.begin(), reports.end(), [](const SequenceReport& r) { return r.any_violation(); });
  if (violated) err << "a certificate or verdict is violated\n";
  return violated ? kExitViolation : kExitOk;
}

int cmd_witness(const Options& o, std::ostream& out) {
  const auto base = base_by_name(o.chain);
  const std::string f = o.f;
  const auto w = nonrapid_witness_for_chain(base.chain(), [&f](std::size_t n) { return witness_size(f, n); }, o.count);
  write_witness(out, w);
  return kExitOk;
}

int cmd_split(const Options& o, std::ostream& out) {
  auto chooser = o.chooser.empty() ? UltraChooser::always_left() : UltraChooser::parse(o.chooser);
  const auto phi = Phi::parse(o.phi);
  const auto s = interval_split(chooser, phi, o.k);
  out << "phi=" << phi.name() << '\n' << "side=" << to_string(s.side) << '\n' << "method=" << s.method << '\n';
  for (std::size_t n = 0; n < s.intervals.size(); ++n) {
    out << "interval[" << n << "]=" << s.intervals[n].first.str() << ' ' << s.intervals[n].second.str() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vast and syndetic sets, nonrapid filters and discrete sequence constructions", "vastctl"};
  app.require_subcommand(1);
  Options o;

  auto* vast_cmd = app.add_subcommand("vast", "arity J of a subset of a finite group");
  vast_cmd->add_option("group", o.group_spec, "cyclic:n, boolean:k, dihedral:n, sym:n or cayley:<path>")->required();
  vast_cmd->add_option("--set", o.set_literal, "element codes such as 0,2,4, or all")->required();

  auto* props_cmd = app.add_subcommand("verify-props", "exhaustive checks over the finite group catalog");
  props_cmd->add_option("--order-bound", o.order_bound, "largest group order swept");

  auto* construct_cmd = app.add_subcommand("construct", "run a sequence construction and write its report");
  construct_cmd->add_option("pipeline", o.pipeline, "s11, s21, t22 or t31")
      ->required()
      ->check(CLI::IsMember({"s11", "s21", "t22", "t31"}));
  construct_cmd->add_option("--group", o.group, "boolean-omega or z-adic:<p>");
  construct_cmd->add_option("--count", o.count, "stages");
  construct_cmd->add_option("--depth", o.depth, "codes inspected by checks");
  construct_cmd->add_option("--chooser", o.chooser, "left, right, min or script:<path>");
  construct_cmd->add_option("--out", o.out_path, "report file (stdout when absent)");

  auto* witness_cmd = app.add_subcommand("witness", "nonrapidity witness T_n for a subgroup chain");
  witness_cmd->add_option("--chain", o.chain, "dyadic or z-adic:<p>");
  witness_cmd->add_option("--f", o.f, "sizes f(n): a polynomial such as n+1, or 2^n");
  witness_cmd->add_option("--count", o.count, "levels");

  auto* split_cmd = app.add_subcommand("split", "interval split of omega decided by a chooser");
  split_cmd->add_option("--phi", o.phi, "polynomial such as n^2+1");
  split_cmd->add_option("--k", o.k, "intervals");
  split_cmd->add_option("--chooser", o.chooser, "left, right, min or script:<path>");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*vast_cmd) return cmd_vast(o, out);
    if (*props_cmd) return cmd_verify_props(o, out, err);
    if (*construct_cmd) return cmd_construct(o, out, err);
    if (*witness_cmd) return cmd_witness(o, out);
    if (*split_cmd) return cmd_split(o, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.kind() == ErrorKind::format ? kExitUsage : kExitViolation;
  }
  return kExitUsage;
}

}  // namespace vast
