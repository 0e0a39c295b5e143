#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "klab/zerosum.hpp"
#include "packed.hpp"
#include "text.hpp"

namespace klab {

Support::Support() : data_(std::make_shared<Data>()) {}

Support::Support(Group group, std::vector<GroupElement> elements) {
  for (const auto& x : elements) require_member(group, x);
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
    throw Error(ErrorKind::InvalidInput, "support elements must be distinct");
  data_ = std::make_shared<Data>(Data{std::move(group), std::move(elements)});
}

Support Support::whole_group(const Group& g) { return Support(g, all_elements(g)); }

std::optional<std::size_t> Support::index_of(const GroupElement& x) const {
  const auto& e = elements();
  auto it = std::lower_bound(e.begin(), e.end(), x);
  if (it == e.end() || !(*it == x)) return std::nullopt;
  return static_cast<std::size_t>(it - e.begin());
}

Support Support::subset(std::uint64_t mask) const {
  std::vector<GroupElement> picked;
  for (std::size_t i = 0; i < size(); ++i)
    if (mask >> i & 1u) picked.push_back(elements()[i]);
  return Support(group(), std::move(picked));
}

bool operator==(const Support& a, const Support& b) {
  return a.data_ == b.data_ || (a.group() == b.group() && a.elements() == b.elements());
}

Sequence::Sequence(Support support) : support_(std::move(support)), mult_(support_.size(), 0) {}

Sequence::Sequence(Support support, Multiplicities multiplicities)
    : support_(std::move(support)), mult_(std::move(multiplicities)) {
  if (mult_.size() != support_.size())
    throw Error(ErrorKind::InvalidInput, "multiplicity vector does not match the support size");
}

Sequence Sequence::from_terms(Support support, const std::vector<std::pair<GroupElement, std::uint32_t>>& terms) {
  Multiplicities m(support.size(), 0);
  for (const auto& [x, count] : terms) {
    const auto idx = support.index_of(x);
    if (!idx) throw Error(ErrorKind::InvalidElement, "element " + format_element(x) + " is not in the support");
    m[*idx] += count;
  }
  return Sequence(std::move(support), std::move(m));
}

std::size_t Sequence::length() const {
  return std::accumulate(mult_.begin(), mult_.end(), std::size_t{0});
}

Sequence Sequence::concat(const Sequence& other) const {
  if (!(support_ == other.support_)) throw Error(ErrorKind::InvalidInput, "sequences over different supports");
  Multiplicities m = mult_;
  for (std::size_t i = 0; i < m.size(); ++i) m[i] += other.mult_[i];
  return Sequence(support_, std::move(m));
}

bool Sequence::divides(const Sequence& other) const {
  if (!(support_ == other.support_)) return false;
  for (std::size_t i = 0; i < mult_.size(); ++i)
    if (mult_[i] > other.mult_[i]) return false;
  return true;
}

GroupElement sigma(const Sequence& s) {
  const auto& g = s.support().group();
  GroupElement total = zero_element(g);
  for (std::size_t i = 0; i < s.support().size(); ++i) {
    if (s.multiplicity(i) == 0) continue;
    total = element_add(g, total, element_scale(g, Integer(static_cast<unsigned long>(s.multiplicity(i))),
                                                s.support().elements()[i]));
  }
  return total;
}

bool is_zero_sum(const Sequence& s) { return sigma(s) == zero_element(s.support().group()); }

bool has_proper_zero_subsequence(const Sequence& s) {
  if (s.empty() || !is_zero_sum(s))
    throw Error(ErrorKind::InvalidInput, "minimality test needs a nonempty zero-sum sequence");

  // Write s = t * g. A proper nonempty zero-sum subsequence of s exists iff t
  // has a nonempty zero-sum subsequence (its complement in s would otherwise
  // be one avoiding g).
  Multiplicities t = s.multiplicities();
  const auto last = static_cast<std::size_t>(
      std::find_if(t.begin(), t.end(), [](std::uint32_t v) { return v > 0; }) - t.begin());
  --t[last];

  const detail::PackedArithmetic arith(s.support().group(), s.support().elements(), s.length());
  std::set<std::int64_t> reachable;  // sums of nonempty sub-multisets of the processed items
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0) continue;
    std::vector<std::int64_t> multiples;
    std::int64_t acc = arith.zero();
    for (std::uint32_t c = 1; c <= t[i]; ++c) {
      acc = arith.add(acc, arith.code(i));
      multiples.push_back(acc);
    }
    std::set<std::int64_t> next = reachable;
    for (auto m : multiples) {
      next.insert(m);
      for (auto r : reachable) next.insert(arith.add(r, m));
    }
    reachable = std::move(next);
    if (reachable.contains(arith.zero())) return true;
  }
  return false;
}

bool is_atom(const Sequence& s) { return !s.empty() && is_zero_sum(s) && !has_proper_zero_subsequence(s); }

AtomSet atoms(const Support& support, std::optional<std::size_t> cap) {
  const Group& g = support.group();
  std::size_t bound;
  bool complete;
  if (g.is_finite()) {
    const Integer order = *g.order();
    const std::size_t order_sz = order.fits_ulong_p() ? order.get_ui() : std::numeric_limits<std::size_t>::max();
    bound = cap ? std::min(*cap, order_sz) : order_sz;
    complete = !cap || *cap >= order_sz;
  } else {
    if (!cap) throw Error(ErrorKind::NeedsCap, "atom enumeration over a group with free rank needs a cap");
    bound = *cap;
    complete = false;
  }

  AtomSet out{support, {}, complete, bound};
  if (support.size() == 0 || bound == 0) return out;

  const detail::PackedArithmetic arith(g, support.elements(), bound);
  auto found = detail::minimal_zero_sums(arith, bound);
  std::sort(found.begin(), found.end(), [](const Multiplicities& a, const Multiplicities& b) {
    const auto la = std::accumulate(a.begin(), a.end(), std::size_t{0});
    const auto lb = std::accumulate(b.begin(), b.end(), std::size_t{0});
    if (la != lb) return la < lb;
    return a > b;  // lex order of the sorted element list
  });
  out.atoms.reserve(found.size());
  for (auto& m : found) out.atoms.emplace_back(support, std::move(m));
  return out;
}

std::size_t davenport(const Group& g) {
  if (!g.is_finite()) throw Error(ErrorKind::Unsupported, "the Davenport constant is only defined here for finite groups");
  const AtomSet a = atoms(Support::whole_group(g));
  std::size_t best = 0;
  for (const auto& atom : a.atoms) best = std::max(best, atom.length());
  return best;
}

Sequence parse_sequence(const Support& support, std::string_view s) {
  s = text::trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw Error(ErrorKind::InvalidInput, "sequence literal must look like [g1^m1, g2^m2, ...]");
  const auto inner = text::trim(s.substr(1, s.size() - 2));
  std::vector<std::pair<GroupElement, std::uint32_t>> terms;
  if (!inner.empty()) {
    for (auto part : text::split_top_level(inner, ',')) {
      std::uint32_t count = 1;
      auto caret = part.rfind('^');
      if (caret != std::string_view::npos && part.find_first_of(")]", caret) == std::string_view::npos) {
        const Integer m = text::parse_integer(part.substr(caret + 1), ErrorKind::InvalidInput);
        if (m < 0 || m > 1000000) throw Error(ErrorKind::InvalidInput, "bad multiplicity in '" + std::string(part) + "'");
        count = static_cast<std::uint32_t>(m.get_ui());
        part = text::trim(part.substr(0, caret));
      }
      terms.emplace_back(parse_element(support.group(), part), count);
    }
  }
  return Sequence::from_terms(support, terms);
}

std::string format_sequence(const Sequence& s) {
  std::string out = "[";
  bool first = true;
  for (std::size_t i = 0; i < s.support().size(); ++i) {
    const auto m = s.multiplicity(i);
    if (m == 0) continue;
    if (!first) out += ',';
    first = false;
    out += format_element_compact(s.support().elements()[i]);
    if (m != 1) out += "^" + std::to_string(m);
  }
  return out + "]";
}

Support parse_support(const Group& g, std::string_view s) {
  s = text::trim(s);
  if (s == "all" || s == "G") return Support::whole_group(g);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw Error(ErrorKind::InvalidInput, "support literal must look like [g1, g2, ...] or 'all'");
  const auto inner = text::trim(s.substr(1, s.size() - 2));
  std::vector<GroupElement> elems;
  if (!inner.empty())
    for (auto part : text::split_top_level(inner, ',')) elems.push_back(parse_element(g, part));
  return Support(g, std::move(elems));
}

std::string format_support(const Support& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += format_element_compact(s.elements()[i]);
  }
  return out + "]";
}

}  // namespace klab
