#include "vast/report.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "vast/error.hpp"

namespace vast {

std::string Verdict::tag() const {
  switch (kind) {
    case VerdictKind::exact:
      return "exact";
    case VerdictKind::depth:
      return "depth:" + std::to_string(depth);
    case VerdictKind::violated:
      return "violated";
  }
  return "?";
}

Verdict weakest(const Verdict& a, const Verdict& b) {
  if (a.kind == VerdictKind::violated) return a;
  if (b.kind == VerdictKind::violated) return b;
  if (a.kind == VerdictKind::depth && b.kind == VerdictKind::depth) return a.depth <= b.depth ? a : b;
  if (a.kind == VerdictKind::depth) return a;
  return b;
}

std::vector<Code> SequenceReport::codes() const {
  std::vector<Code> out;
  out.reserve(xi.size());
  for (const auto& e : xi) out.push_back(e.code);
  return out;
}

const Certificate* SequenceReport::certificate(std::string_view name) const {
  for (const auto& c : certificates) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const TopologyVerdict* SequenceReport::verdict(std::string_view property) const {
  for (const auto& v : verdicts) {
    if (v.property == property) return &v;
  }
  return nullptr;
}

bool SequenceReport::any_violation() const {
  return std::any_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return !c.verdict.ok(); }) ||
         std::any_of(verdicts.begin(), verdicts.end(), [](const TopologyVerdict& v) { return !v.verdict.ok(); });
}

namespace {

void put_verdict(std::ostringstream& out, const Verdict& v) {
  out << v.tag();
  if (!v.detail.empty()) out << ' ' << v.detail;
}

}  // namespace

std::string serialize(const SequenceReport& r) {
  std::ostringstream out;
  out << "report=" << r.label << '\n';
  out << "group=" << r.group << '\n';
  out << "base=" << r.base << '\n';
  out << "construction=" << r.construction << '\n';
  out << "depth=" << r.depth << '\n';
  out << "levels=" << r.levels << '\n';
  out << "tail=" << (r.tail ? std::to_string(*r.tail) : "none") << '\n';
  for (std::size_t i = 0; i < r.xi.size(); ++i) out << "xi[" << i << "]=" << r.xi[i].code << ' ' << r.xi[i].stage << '\n';
  for (std::size_t k = 0; k < r.gamma.size(); ++k) out << "gamma[" << k << "]=" << r.gamma[k].n << ' ' << r.gamma[k].g << '\n';
  for (const auto& n : r.notes) out << "note " << n << '\n';
  for (const auto& c : r.certificates) {
    out << "cert " << c.name << ' ';
    put_verdict(out, c.verdict);
    out << '\n';
  }
  for (const auto& v : r.verdicts) {
    out << "verdict " << v.property << ' ';
    put_verdict(out, v.verdict);
    out << '\n';
    for (const auto& w : v.warnings) out << "warning " << v.property << ' ' << w << '\n';
  }
  out << "end\n";
  return out.str();
}

std::string serialize(const std::vector<SequenceReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += serialize(r);
  return out;
}

namespace {

[[noreturn]] void bad(std::size_t line, const std::string& why) {
  throw Error(ErrorKind::format, "report line " + std::to_string(line) + ": " + why);
}

std::uint64_t number(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) bad(line, "expected a number, got '" + std::string(s) + "'");
  return v;
}

// Split "word rest" at the first space.
std::pair<std::string_view, std::string_view> head(std::string_view s) {
  const auto sp = s.find(' ');
  if (sp == std::string_view::npos) return {s, {}};
  return {s.substr(0, sp), s.substr(sp + 1)};
}

Verdict read_verdict(std::string_view s, std::size_t line) {
  auto [tag, detail] = head(s);
  Verdict v;
  v.detail = std::string(detail);
  if (tag == "exact") {
    v.kind = VerdictKind::exact;
  } else if (tag == "violated") {
    v.kind = VerdictKind::violated;
  } else if (tag.rfind("depth:", 0) == 0) {
    v.kind = VerdictKind::depth;
    v.depth = number(tag.substr(6), line);
  } else {
    bad(line, "unknown verdict '" + std::string(tag) + "'");
  }
  return v;
}

// "name[i]=a b" with i checked against the running index.
std::pair<std::uint64_t, std::uint64_t> indexed_pair(std::string_view s, std::size_t expected, std::size_t line) {
  const auto open = s.find('[');
  const auto close = s.find("]=");
  if (open == std::string_view::npos || close == std::string_view::npos) bad(line, "malformed indexed entry");
  if (number(s.substr(open + 1, close - open - 1), line) != expected) bad(line, "entries out of order");
  auto [a, b] = head(s.substr(close + 2));
  return {number(a, line), number(b, line)};
}

}  // namespace

std::vector<SequenceReport> parse_reports(std::string_view text) {
  std::vector<SequenceReport> out;
  std::optional<SequenceReport> cur;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!cur) {
      if (line.rfind("report=", 0) != 0) bad(line_no, "expected report=");
      cur.emplace();
      cur->label = std::string(line.substr(7));
      continue;
    }
    auto& r = *cur;
    auto value = [&](std::string_view key) -> std::optional<std::string_view> {
      if (line.size() > key.size() && line.substr(0, key.size()) == key && line[key.size()] == '=') return line.substr(key.size() + 1);
      return std::nullopt;
    };
    if (line == "end") {
      out.push_back(std::move(r));
      cur.reset();
    } else if (auto v = value("group")) {
      r.group = std::string(*v);
    } else if (auto v = value("base")) {
      r.base = std::string(*v);
    } else if (auto v = value("construction")) {
      r.construction = std::string(*v);
    } else if (auto v = value("depth")) {
      r.depth = number(*v, line_no);
    } else if (auto v = value("levels")) {
      r.levels = number(*v, line_no);
    } else if (auto v = value("tail")) {
      if (*v == "none") {
        r.tail.reset();
      } else {
        r.tail = number(*v, line_no);
      }
    } else if (line.rfind("xi[", 0) == 0) {
      auto [code, stage] = indexed_pair(line, r.xi.size(), line_no);
      r.xi.push_back({code, stage});
    } else if (line.rfind("gamma[", 0) == 0) {
      auto [n, g] = indexed_pair(line, r.gamma.size(), line_no);
      r.gamma.push_back({n, g});
    } else if (line.rfind("note ", 0) == 0) {
      r.notes.emplace_back(line.substr(5));
    } else if (line.rfind("cert ", 0) == 0) {
      auto [name, rest] = head(line.substr(5));
      r.certificates.push_back({std::string(name), read_verdict(rest, line_no)});
    } else if (line.rfind("verdict ", 0) == 0) {
      auto [name, rest] = head(line.substr(8));
      r.verdicts.push_back({std::string(name), read_verdict(rest, line_no), {}});
    } else if (line.rfind("warning ", 0) == 0) {
      auto [name, rest] = head(line.substr(8));
      if (r.verdicts.empty() || r.verdicts.back().property != name) bad(line_no, "warning without its verdict");
      r.verdicts.back().warnings.emplace_back(rest);
    } else {
      bad(line_no, "unrecognised line '" + std::string(line) + "'");
    }
  }
  if (cur) bad(line_no, "missing end");
  return out;
}

SequenceReport parse_report(std::string_view text) {
  auto all = parse_reports(text);
  if (all.size() != 1) throw Error(ErrorKind::format, "expected one report, found " + std::to_string(all.size()));
  return std::move(all.front());
}

}  // namespace vast
