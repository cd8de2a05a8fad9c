#include "vast/verify.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "vast/error.hpp"

namespace vast {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " " : "") + parts[i];
  return out;
}

}  // namespace

TopologyVerdict check_discrete(const SequenceReport& xi, const NeighborhoodBase& base, std::size_t depth) {
  TopologyVerdict out{"discrete", Verdict::exact(), {}};
  const auto& g = base.group();
  const auto codes = xi.codes();
  std::unordered_map<Code, std::size_t> first_seen;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] == g.identity()) {
      out.verdict = Verdict::violated("identity at " + std::to_string(i));
      return out;
    }
    auto [it, fresh] = first_seen.emplace(codes[i], i);
    if (!fresh) {
      out.verdict = Verdict::violated("repeat " + std::to_string(codes[i]) + " at " + std::to_string(it->second) + "," + std::to_string(i));
      return out;
    }
  }

  bool exact = base.subgroups() && xi.tail.has_value();
  std::vector<std::string> witnesses;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const Code x = codes[i];
    const Code xinv = g.inv(x);
    // The least n with x^-1 y ∉ U_n for every other y is max θ(x^-1 y) + 1.
    std::size_t iso = 0;
    for (std::size_t j = 0; j < codes.size(); ++j) {
      if (j != i) iso = std::max(iso, strata(base, g.op(xinv, codes[j])) + 1);
    }
    // Growing n keeps isolation; past θ(x) the coset x U_n avoids U_n.
    std::size_t n = iso;
    if (exact) {
      n = std::max(n, strata(base, x) + 1);
      if (n > *xi.tail) exact = false;
    }
    witnesses.push_back(std::to_string(i) + ":" + std::to_string(n));
  }
  out.verdict = exact ? Verdict::exact(join(witnesses)) : Verdict::to_depth(depth, join(witnesses));
  return out;
}

TopologyVerdict check_limit_point(const SequenceReport& xi, const NeighborhoodBase& base, std::size_t depth) {
  TopologyVerdict out{"limit-point", Verdict::exact(), {}};
  if (xi.levels > 0 && depth > xi.levels) {
    out.warnings.push_back("depth " + std::to_string(depth) + " clamped to levels " + std::to_string(xi.levels));
    depth = xi.levels;
  }
  std::vector<std::string> witnesses;
  for (std::size_t n = 0; n < depth; ++n) {
    auto it = std::find_if(xi.xi.begin(), xi.xi.end(), [&](const XiEntry& e) { return base.contains(n, e.code); });
    if (it == xi.xi.end()) {
      out.verdict = Verdict::violated("n=" + std::to_string(n));
      return out;
    }
    witnesses.push_back(std::to_string(n) + ":" + std::to_string(it->code));
  }
  out.verdict = Verdict::exact("n<" + std::to_string(depth) + (witnesses.empty() ? "" : " " + join(witnesses)));
  return out;
}

CosetMeeting coset_meeting(const SequenceReport& xi, const NeighborhoodBase& base, Code g) {
  const auto& grp = base.group();
  CosetMeeting out;
  out.g = g;
  out.theta = strata(base, g);
  const std::size_t level = out.theta + 1;
  const Code ginv = grp.inv(g);
  for (const auto& e : xi.xi) {
    if (base.contains(level, grp.op(ginv, e.code))) out.hits.push_back(e.code);
  }
  // With subgroups, g U_{n+1} ∩ U_t = ∅ iff g ∉ U_min(n+1,t); g ∉ U_{n+1}.
  if (base.subgroups() && xi.tail && *xi.tail >= level) {
    out.verdict = Verdict::exact("tail");
    return out;
  }
  const auto* cert = xi.certificate("coset-finite");
  if (cert && cert->verdict.kind == VerdictKind::exact) {
    for (std::size_t k = 0; k < xi.gamma.size(); ++k) {
      const auto& ge = xi.gamma[k];
      if (ge.n + 1 <= level && base.contains(ge.n + 1, grp.op(grp.inv(ge.g), g))) {
        out.verdict = Verdict::exact("gamma " + std::to_string(k));
        return out;
      }
    }
  }
  out.verdict = Verdict::to_depth(xi.depth, "prefix only");
  return out;
}

TopologyVerdict check_unique_limit(const SequenceReport& xi, const NeighborhoodBase& base, std::size_t depth) {
  TopologyVerdict out{"unique-limit", Verdict::exact(), {}};
  const auto* cert = xi.certificate("coset-finite");
  if (!xi.tail && !cert) throw Error(ErrorKind::cannot_certify, "report carries neither a tail level nor a coset-finite certificate");
  if (cert && !cert->verdict.ok()) {
    out.verdict = Verdict::violated("coset-finite " + cert->verdict.detail);
    return out;
  }
  const Code e = base.group().identity();
  std::size_t checked = 0;
  std::size_t max_hits = 0;
  Verdict combined = Verdict::exact();
  for (Code g = 0; g < depth; ++g) {
    if (g == e) continue;
    const auto m = coset_meeting(xi, base, g);
    ++checked;
    max_hits = std::max(max_hits, m.hits.size());
    if (m.verdict.kind != VerdictKind::exact && combined.kind == VerdictKind::exact) {
      combined = Verdict::to_depth(depth, "first-uncertified=" + std::to_string(g));
    }
  }
  combined.detail = "codes=" + std::to_string(checked) + " max-hits=" + std::to_string(max_hits) +
                    (combined.detail.empty() ? "" : " " + combined.detail);
  out.verdict = combined;
  return out;
}

TopologyVerdict check_disjoint(const SequenceReport& xi1, const SequenceReport& xi2) {
  TopologyVerdict out{"disjoint", Verdict::exact(), {}};
  std::unordered_map<Code, std::size_t> second;
  for (std::size_t j = 0; j < xi2.xi.size(); ++j) second.emplace(xi2.xi[j].code, j);
  for (std::size_t i = 0; i < xi1.xi.size(); ++i) {
    auto it = second.find(xi1.xi[i].code);
    if (it != second.end()) {
      out.verdict = Verdict::violated("common=" + std::to_string(it->first) + " at " + std::to_string(i) + "," + std::to_string(it->second));
      return out;
    }
  }
  out.verdict.detail = "sizes=" + std::to_string(xi1.xi.size()) + "," + std::to_string(xi2.xi.size());
  return out;
}

void attach_verdicts(SequenceReport& xi, const NeighborhoodBase& base) {
  xi.verdicts.push_back(check_discrete(xi, base, xi.depth));
  xi.verdicts.push_back(check_limit_point(xi, base, xi.levels));
  xi.verdicts.push_back(check_unique_limit(xi, base, xi.depth));
}

}  // namespace vast
