#include <cctype>
#include <sstream>

#include "klab/abelian.hpp"
#include "text.hpp"

namespace klab {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "invalid-spec";
    case ErrorKind::InvalidElement: return "invalid-element";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::NeedsCap: return "needs-cap";
    case ErrorKind::NeedsBox: return "needs-box";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::OutOfHypothesis: return "out-of-hypothesis";
    case ErrorKind::InvalidLocalization: return "invalid-localization";
    case ErrorKind::GuardExceeded: return "guard-exceeded";
    case ErrorKind::SurveyFailure: return "survey-failure";
  }
  return "unknown";
}

namespace text {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    else if (c == ')' || c == ']') --depth;
    else if (c == sep && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

Integer parse_integer(std::string_view s, ErrorKind kind) {
  s = trim(s);
  std::string str(s);
  if (!str.empty() && str.front() == '+') str.erase(0, 1);
  const bool digits = !str.empty() &&
                      str.find_first_not_of("0123456789", str.front() == '-' ? 1 : 0) == std::string::npos &&
                      str != "-";
  if (!digits) throw Error(kind, "expected an integer, got '" + std::string(s) + "'");
  return Integer(str, 10);
}

std::vector<Integer> parse_integer_list(std::string_view s, ErrorKind kind) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw Error(kind, "expected a bracketed integer list, got '" + std::string(s) + "'");
  const auto inner = trim(s.substr(1, s.size() - 2));
  std::vector<Integer> out;
  if (inner.empty()) return out;
  for (auto part : split_top_level(inner, ',')) out.push_back(parse_integer(part, kind));
  return out;
}

std::string join_integers(std::span<const Integer> v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i].get_str();
  }
  return out + "]";
}

}  // namespace text

Group parse_group(std::string_view spec) {
  spec = text::trim(spec);
  if (spec == "0" || spec == "trivial" || spec == "1") return Group{};
  if (spec.empty()) throw Error(ErrorKind::InvalidSpec, "empty group spec");

  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  for (auto token : text::split_top_level(spec, 'x')) {
    if (token.empty()) throw Error(ErrorKind::InvalidSpec, "empty factor in group spec '" + std::string(spec) + "'");
    if (token.front() == 'Z') {
      auto rest = text::trim(token.substr(1));
      if (rest.empty()) {
        free_rank += 1;
      } else if (rest.front() == '^') {
        const Integer r = text::parse_integer(rest.substr(1), ErrorKind::InvalidSpec);
        if (r < 0 || !r.fits_ulong_p()) throw Error(ErrorKind::InvalidSpec, "bad free rank in '" + std::string(token) + "'");
        free_rank += r.get_ui();
      } else {
        throw Error(ErrorKind::InvalidSpec, "bad free factor '" + std::string(token) + "'");
      }
    } else if (token.front() == 'C') {
      torsion.push_back(text::parse_integer(token.substr(1), ErrorKind::InvalidSpec));
    } else {
      throw Error(ErrorKind::InvalidSpec, "bad factor '" + std::string(token) + "' (expected Z, Z^r or C<n>)");
    }
  }
  return group_from_spec(free_rank, torsion);
}

std::string format_group(const Group& g) {
  if (g.is_trivial()) return "0";
  std::vector<std::string> parts;
  if (g.free_rank() == 1) parts.emplace_back("Z");
  else if (g.free_rank() > 1) parts.push_back("Z^" + std::to_string(g.free_rank()));
  for (const auto& d : g.invariant_factors()) parts.push_back("C" + d.get_str());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " x ";
    out += parts[i];
  }
  return out;
}

GroupElement parse_element(const Group& g, std::string_view s) {
  s = text::trim(s);
  if (s.empty()) throw Error(ErrorKind::InvalidElement, "empty element");
  if (s.front() != '(') {
    if (g.coordinate_count() != 1)
      throw Error(ErrorKind::InvalidElement,
                  "bare integer '" + std::string(s) + "' only names elements of a group with one coordinate");
    const std::vector<Integer> c{text::parse_integer(s, ErrorKind::InvalidElement)};
    return element_from_coordinates(g, c);
  }
  if (s.back() != ')') throw Error(ErrorKind::InvalidElement, "unbalanced element '" + std::string(s) + "'");
  const auto inner = text::trim(s.substr(1, s.size() - 2));
  const auto parts = text::split_top_level(inner, ',');
  if (parts.size() == 2 && !parts[0].empty() && parts[0].front() == '[') {
    auto f = text::parse_integer_list(parts[0], ErrorKind::InvalidElement);
    auto t = text::parse_integer_list(parts[1], ErrorKind::InvalidElement);
    return make_element(g, std::move(f), std::move(t));
  }
  std::vector<Integer> coords;
  if (!inner.empty())
    for (auto p : parts) coords.push_back(text::parse_integer(p, ErrorKind::InvalidElement));
  return element_from_coordinates(g, coords);
}

std::string format_element(const GroupElement& x) {
  return "(" + text::join_integers(x.free_part) + "," + text::join_integers(x.torsion_part) + ")";
}

std::string format_element_compact(const GroupElement& x) {
  const auto c = x.coordinates();
  if (c.size() == 1) return c.front().get_str();
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += c[i].get_str();
  }
  return out + ")";
}

}  // namespace klab
