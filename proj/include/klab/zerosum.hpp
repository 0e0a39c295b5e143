#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "klab/abelian.hpp"

namespace klab {

/// A subset G0 of a group, stored sorted in canonical element order. Copies
/// share the underlying immutable data.
class Support {
 public:
  Support();  // empty support of the trivial group
  Support(Group group, std::vector<GroupElement> elements);

  static Support whole_group(const Group& g);

  const Group& group() const noexcept { return data_->group; }
  const std::vector<GroupElement>& elements() const noexcept { return data_->elements; }
  std::size_t size() const noexcept { return data_->elements.size(); }
  std::optional<std::size_t> index_of(const GroupElement& x) const;

  /// Subset selected by a bitmask over element indices.
  Support subset(std::uint64_t mask) const;

  friend bool operator==(const Support& a, const Support& b);

 private:
  struct Data {
    Group group;
    std::vector<GroupElement> elements;
  };
  std::shared_ptr<const Data> data_;
};

using Multiplicities = std::vector<std::uint32_t>;

/// An element of F(G0): a multiplicity vector aligned with the support.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(Support support);  // empty sequence
  Sequence(Support support, Multiplicities multiplicities);

  /// Builds a sequence from (element, multiplicity) pairs; repeated elements add up.
  static Sequence from_terms(Support support, const std::vector<std::pair<GroupElement, std::uint32_t>>& terms);

  const Support& support() const noexcept { return support_; }
  const Multiplicities& multiplicities() const noexcept { return mult_; }
  std::uint32_t multiplicity(std::size_t i) const { return mult_.at(i); }
  std::size_t length() const;
  bool empty() const { return length() == 0; }

  Sequence concat(const Sequence& other) const;
  bool divides(const Sequence& other) const;

  friend bool operator==(const Sequence& a, const Sequence& b) = default;

 private:
  Support support_;
  Multiplicities mult_;
};

struct AtomSet {
  Support support;
  std::vector<Sequence> atoms;  // sorted by length, then multiplicity vector
  bool complete = false;
  std::size_t cap_used = 0;
};

GroupElement sigma(const Sequence& s);
bool is_zero_sum(const Sequence& s);
/// Requires s nonempty and zero-sum.
bool has_proper_zero_subsequence(const Sequence& s);
bool is_atom(const Sequence& s);

/// Minimal nonempty zero-sum sequences over the support of length at most
/// min(cap, |G|) for finite groups; cap is mandatory when the group has free rank.
AtomSet atoms(const Support& support, std::optional<std::size_t> cap = std::nullopt);

/// Largest atom length of B(G). Finite groups only.
std::size_t davenport(const Group& g);

/// `[g1^m1, g2^m2, ...]` using compact element syntax; `[]` for the empty sequence.
Sequence parse_sequence(const Support& support, std::string_view text);
std::string format_sequence(const Sequence& s);
Support parse_support(const Group& g, std::string_view text);
std::string format_support(const Support& s);

}  // namespace klab
