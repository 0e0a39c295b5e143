#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "klab/abelian.hpp"
#include "klab/zerosum.hpp"

namespace klab::detail {

/// Mixed-radix integer codes for the elements reachable as sums of at most
/// `max_summands` terms drawn from a fixed element list. Torsion digits run
/// over [0, d); free digits are offset by the largest reachable magnitude.
class PackedArithmetic {
 public:
  PackedArithmetic(const Group& g, std::span<const GroupElement> elements, std::size_t max_summands);

  std::int64_t zero() const noexcept { return zero_; }
  std::int64_t code(std::size_t i) const { return codes_[i]; }
  std::span<const std::int64_t> codes() const noexcept { return codes_; }

  std::int64_t add(std::int64_t a, std::int64_t b) const;
  std::int64_t neg(std::int64_t a) const;

 private:
  std::int64_t encode(const GroupElement& x) const;

  std::vector<std::int64_t> radix_;
  std::vector<std::int64_t> offset_;  // 0 for torsion digits
  std::vector<bool> free_;
  std::vector<std::int64_t> codes_;
  std::int64_t zero_ = 0;
};

struct MultiplicitiesHash {
  std::size_t operator()(const Multiplicities& m) const noexcept;
};

/// All minimal zero-sum multisets over the items (codes may repeat) with at
/// most `max_len` terms, using at most `caps[i]` copies of item i when caps is
/// nonempty. Depth-first over non-decreasing item lists; a prefix is extended
/// only while it stays zero-sum free.
std::vector<Multiplicities> minimal_zero_sums(const PackedArithmetic& arith, std::size_t max_len,
                                              std::span<const std::uint32_t> caps = {});

/// Visits every zero-sum multiplicity vector with total length in [1, max_len],
/// ordered by length and then lexicographically by the sorted item list.
/// The visitor returns false to stop early.
void for_each_zero_sum(const PackedArithmetic& arith, std::size_t max_len, bool full_support,
                       const std::function<bool(const Multiplicities&)>& visit);

/// Memoized set of lengths L(S) for zero-sum multisets S, given the complete
/// list of atoms that can divide them.
class LengthTable {
 public:
  LengthTable(std::vector<Multiplicities> atoms, std::size_t items);

  /// Sorted lengths; empty when S has no factorization into the given atoms.
  const std::vector<std::uint32_t>& lengths(const Multiplicities& s);
  std::size_t memo_size() const { return memo_.size(); }

 private:
  std::vector<Multiplicities> atoms_;
  // atoms_by_item_[i]: atoms containing item i.
  std::vector<std::vector<std::size_t>> atoms_by_item_;
  std::unordered_map<Multiplicities, std::vector<std::uint32_t>, MultiplicitiesHash> memo_;
};

}  // namespace klab::detail
