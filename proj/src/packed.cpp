#include "packed.hpp"

#include <algorithm>
#include <limits>

namespace klab::detail {

namespace {

constexpr std::int64_t kCodeLimit = std::int64_t{1} << 62;

std::int64_t to_int64(const Integer& v, const char* what) {
  if (!v.fits_slong_p()) throw Error(ErrorKind::Unsupported, std::string(what) + " too large for enumeration");
  return v.get_si();
}

}  // namespace

PackedArithmetic::PackedArithmetic(const Group& g, std::span<const GroupElement> elements,
                                   std::size_t max_summands) {
  const std::size_t n = g.coordinate_count();
  radix_.resize(n);
  offset_.assign(n, 0);
  free_.assign(n, false);

  for (std::size_t i = 0; i < g.free_rank(); ++i) {
    Integer widest = 0;
    for (const auto& x : elements) widest = std::max<Integer>(widest, abs(x.free_part[i]));
    const Integer bound = widest * static_cast<unsigned long>(std::max<std::size_t>(max_summands, 1));
    offset_[i] = to_int64(bound, "free coordinate range");
    radix_[i] = to_int64(2 * bound + 1, "free coordinate range");
    free_[i] = true;
  }
  for (std::size_t j = 0; j < g.torsion_count(); ++j)
    radix_[g.free_rank() + j] = to_int64(g.invariant_factors()[j], "invariant factor");

  Integer universe = 1;
  for (auto r : radix_) universe *= static_cast<long>(r);
  if (universe > kCodeLimit)
    throw Error(ErrorKind::Unsupported, "group region of size " + universe.get_str() + " is too large for enumeration");

  zero_ = encode(zero_element(g));
  for (const auto& x : elements) {
    require_member(g, x);
    codes_.push_back(encode(x));
  }
}

std::int64_t PackedArithmetic::encode(const GroupElement& x) const {
  const auto coords = x.coordinates();
  std::int64_t code = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const std::int64_t digit = coords[i].get_si() + offset_[i];
    code = code * radix_[i] + digit;
  }
  return code;
}

std::int64_t PackedArithmetic::add(std::int64_t a, std::int64_t b) const {
  std::int64_t out = 0, place = 1;
  for (std::size_t i = radix_.size(); i-- > 0;) {
    const std::int64_t r = radix_[i];
    const std::int64_t da = a % r, db = b % r;
    a /= r;
    b /= r;
    std::int64_t s;
    if (free_[i]) {
      s = da + db - offset_[i];
      if (s < 0 || s >= r) throw Error(ErrorKind::Unsupported, "partial sum left the enumeration region");
    } else {
      s = da + db;
      if (s >= r) s -= r;
    }
    out += s * place;
    place *= r;
  }
  return out;
}

std::int64_t PackedArithmetic::neg(std::int64_t a) const {
  std::int64_t out = 0, place = 1;
  for (std::size_t i = radix_.size(); i-- > 0;) {
    const std::int64_t r = radix_[i];
    const std::int64_t d = a % r;
    a /= r;
    const std::int64_t s = free_[i] ? 2 * offset_[i] - d : (d == 0 ? 0 : r - d);
    out += s * place;
    place *= r;
  }
  return out;
}

std::size_t MultiplicitiesHash::operator()(const Multiplicities& m) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto v : m) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

namespace {

struct AtomSearch {
  const PackedArithmetic& arith;
  std::size_t max_len;
  std::span<const std::uint32_t> caps;
  Multiplicities mult;
  std::vector<Multiplicities> out;

  void run(std::size_t start, std::size_t len, std::int64_t sum, const std::vector<std::int64_t>& subsums) {
    const std::size_t k = arith.codes().size();
    for (std::size_t i = start; i < k; ++i) {
      if (!caps.empty() && mult[i] >= caps[i]) continue;
      const std::int64_t g = arith.code(i);
      const std::int64_t next = arith.add(sum, g);
      if (next == arith.zero()) {
        // A zero-sum free prefix closed to zero sum is minimal.
        ++mult[i];
        out.push_back(mult);
        --mult[i];
        continue;
      }
      if (len + 1 >= max_len) continue;
      if (g == arith.zero()) continue;
      if (std::binary_search(subsums.begin(), subsums.end(), arith.neg(g))) continue;

      std::vector<std::int64_t> extended;
      extended.reserve(2 * subsums.size() + 1);
      extended.insert(extended.end(), subsums.begin(), subsums.end());
      extended.push_back(g);
      for (auto s : subsums) extended.push_back(arith.add(s, g));
      std::sort(extended.begin(), extended.end());
      extended.erase(std::unique(extended.begin(), extended.end()), extended.end());

      ++mult[i];
      run(i, len + 1, next, extended);
      --mult[i];
    }
  }
};

struct ZeroSumWalk {
  const PackedArithmetic& arith;
  bool full_support;
  const std::function<bool(const Multiplicities&)>& visit;
  Multiplicities mult;
  bool stopped = false;

  void run(std::size_t remaining, std::size_t start, std::int64_t sum, std::ptrdiff_t last) {
    if (stopped) return;
    const std::size_t k = arith.codes().size();
    if (remaining == 0) {
      if (full_support && static_cast<std::size_t>(last + 1) != k) return;
      if (sum == arith.zero() && !visit(mult)) stopped = true;
      return;
    }
    for (std::size_t i = start; i < k && !stopped; ++i) {
      if (full_support) {
        if (static_cast<std::ptrdiff_t>(i) > last + 1) break;
        if (remaining - 1 < k - 1 - i) continue;
      }
      ++mult[i];
      run(remaining - 1, i, arith.add(sum, arith.code(i)), std::max<std::ptrdiff_t>(last, static_cast<std::ptrdiff_t>(i)));
      --mult[i];
    }
  }
};

}  // namespace

std::vector<Multiplicities> minimal_zero_sums(const PackedArithmetic& arith, std::size_t max_len,
                                              std::span<const std::uint32_t> caps) {
  AtomSearch search{arith, max_len, caps, Multiplicities(arith.codes().size(), 0), {}};
  if (max_len >= 1) search.run(0, 0, arith.zero(), {});
  return std::move(search.out);
}

void for_each_zero_sum(const PackedArithmetic& arith, std::size_t max_len, bool full_support,
                       const std::function<bool(const Multiplicities&)>& visit) {
  ZeroSumWalk walk{arith, full_support, visit, Multiplicities(arith.codes().size(), 0)};
  for (std::size_t len = 1; len <= max_len && !walk.stopped; ++len) walk.run(len, 0, arith.zero(), -1);
}

LengthTable::LengthTable(std::vector<Multiplicities> atoms, std::size_t items)
    : atoms_(std::move(atoms)), atoms_by_item_(items) {
  for (std::size_t a = 0; a < atoms_.size(); ++a)
    for (std::size_t i = 0; i < items; ++i)
      if (atoms_[a][i] > 0) atoms_by_item_[i].push_back(a);
}

const std::vector<std::uint32_t>& LengthTable::lengths(const Multiplicities& s) {
  if (auto it = memo_.find(s); it != memo_.end()) return it->second;

  std::vector<std::uint32_t> result;
  const auto first = std::find_if(s.begin(), s.end(), [](std::uint32_t v) { return v > 0; });
  if (first == s.end()) {
    result.push_back(0);
  } else {
    // Every factorization has an atom containing the first occupied item.
    const auto item = static_cast<std::size_t>(first - s.begin());
    Multiplicities rest = s;
    for (std::size_t a : atoms_by_item_[item]) {
      const auto& atom = atoms_[a];
      bool divides = true;
      for (std::size_t i = 0; i < s.size() && divides; ++i) divides = atom[i] <= s[i];
      if (!divides) continue;
      for (std::size_t i = 0; i < s.size(); ++i) rest[i] = s[i] - atom[i];
      for (auto l : lengths(rest)) result.push_back(l + 1);
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
  }
  return memo_.emplace(s, std::move(result)).first->second;
}

}  // namespace klab::detail
