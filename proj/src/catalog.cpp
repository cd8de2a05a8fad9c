#include "vast/catalog.hpp"

#include <algorithm>
#include <cctype>

#include "vast/error.hpp"

namespace vast {

namespace {

std::size_t parse_count(const std::string& spec, const std::string& digits) {
  if (digits.empty() || digits.size() > 6 || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw Error(ErrorKind::format, "bad group spec '" + spec + "'");
  }
  return static_cast<std::size_t>(std::stoul(digits));
}

}  // namespace

FiniteGroup parse_group_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::format, "bad group spec '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "cayley") return read_cayley_file(arg);
  const std::size_t n = parse_count(spec, arg);
  try {
    if (kind == "cyclic") return make_cyclic(n);
    if (kind == "boolean") return make_boolean(static_cast<unsigned>(std::min<std::size_t>(n, 64)));
    if (kind == "dihedral") return make_dihedral(n);
    if (kind == "sym") return make_symmetric(n);
  } catch (const Error& e) {
    throw Error(ErrorKind::format, "group spec '" + spec + "': " + e.what());
  }
  throw Error(ErrorKind::format, "unknown group kind '" + kind + "'");
}

std::vector<FiniteGroup> catalog(std::size_t max_order) {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 2; n <= max_order; ++n) out.push_back(make_cyclic(n));
  for (unsigned k = 1; (std::size_t{1} << k) <= max_order; ++k) out.push_back(make_boolean(k));
  for (std::size_t n = 3; 2 * n <= max_order; ++n) out.push_back(make_dihedral(n));
  std::size_t factorial = 6;
  for (std::size_t n = 3; factorial <= max_order; factorial *= ++n) out.push_back(make_symmetric(n));
  return out;
}

SubsetMask parse_subset(const FiniteGroup& g, const std::string& literal) {
  if (literal == "all") return g.all();
  std::vector<Elem> elems;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (token.size() > 9 || !std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw Error(ErrorKind::format, "bad element '" + token + "' in subset literal");
    }
    auto v = std::stoul(token);
    if (v >= g.order()) throw Error(ErrorKind::format, "element " + token + " outside group of order " + std::to_string(g.order()));
    elems.push_back(static_cast<Elem>(v));
    token.clear();
  };
  for (char c : literal) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return g.mask(elems);
}

}  // namespace vast
