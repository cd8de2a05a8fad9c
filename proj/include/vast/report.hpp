#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vast/groups.hpp"

namespace vast {

/// Finite semantics for an infinitary claim.
enum class VerdictKind { exact, depth, violated };

struct Verdict {
  VerdictKind kind = VerdictKind::exact;
  std::size_t depth = 0;  // meaningful for VerdictKind::depth
  std::string detail;

  static Verdict exact(std::string detail = {}) { return {VerdictKind::exact, 0, std::move(detail)}; }
  static Verdict to_depth(std::size_t d, std::string detail = {}) { return {VerdictKind::depth, d, std::move(detail)}; }
  static Verdict violated(std::string detail) { return {VerdictKind::violated, 0, std::move(detail)}; }

  bool ok() const { return kind != VerdictKind::violated; }
  /// `exact`, `depth:<D>` or `violated`.
  std::string tag() const;
  bool operator==(const Verdict&) const = default;
};

/// exact < depth < violated; combining keeps the weaker claim and the
/// smaller depth.
Verdict weakest(const Verdict& a, const Verdict& b);

struct Certificate {
  std::string name;
  Verdict verdict;
  bool operator==(const Certificate&) const = default;
};

struct TopologyVerdict {
  std::string property;
  Verdict verdict;
  std::vector<std::string> warnings;
  bool operator==(const TopologyVerdict&) const = default;
};

struct XiEntry {
  Code code = 0;
  std::size_t stage = 0;  // construction stage that produced the element
  bool operator==(const XiEntry&) const = default;
};

struct GammaEntry {
  std::size_t n = 0;  // the coset g·U_{n+1}, g ∉ U_n
  Code g = 0;
  bool operator==(const GammaEntry&) const = default;
};

/// A computed prefix of a sequence together with its certificates.
/// `tail` records a level t with every uncomputed element inside U_t.
struct SequenceReport {
  std::string label;
  std::string group;
  std::string base;
  std::string construction;
  std::size_t depth = 0;
  std::size_t levels = 0;
  std::optional<std::size_t> tail;
  std::vector<XiEntry> xi;
  std::vector<GammaEntry> gamma;
  std::vector<std::string> notes;
  std::vector<Certificate> certificates;
  std::vector<TopologyVerdict> verdicts;

  std::vector<Code> codes() const;
  const Certificate* certificate(std::string_view name) const;
  const TopologyVerdict* verdict(std::string_view property) const;
  /// Some certificate or verdict is violated.
  bool any_violation() const;
  bool operator==(const SequenceReport&) const = default;
};

/// Plain text: header lines `key=value`, then `xi[i]=<code> <stage>`,
/// `gamma[k]=<n> <g>`, `note <text>`, `cert <name> <tag> <detail>`,
/// `verdict <property> <tag> <detail>` and `warning <property> <text>`,
/// closed by `end`.
std::string serialize(const SequenceReport& r);
std::string serialize(const std::vector<SequenceReport>& reports);
/// Inverse of serialize; throws Error(format) on malformed input.
std::vector<SequenceReport> parse_reports(std::string_view text);
SequenceReport parse_report(std::string_view text);

}  // namespace vast
