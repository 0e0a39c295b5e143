#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "klab/zerosum.hpp"

namespace klab {

/// Unordered factorization: indices into AtomSet::atoms, non-decreasing.
struct Factorization {
  std::vector<std::size_t> atom_indices;

  std::size_t length() const noexcept { return atom_indices.size(); }
  friend auto operator<=>(const Factorization&, const Factorization&) = default;
};

struct LengthReport {
  Sequence target;
  std::vector<std::size_t> length_set;
  std::vector<std::size_t> delta_set;
  std::map<std::size_t, Integer> factorization_counts;  // over distinct unordered factorizations
  std::optional<std::vector<Factorization>> factorizations;
  // False when the atom list may miss atoms dividing the target.
  bool complete = true;
};

/// Successive differences of a sorted set.
std::vector<std::size_t> delta_of(const std::vector<std::size_t>& sorted_set);

/// All distinct unordered factorizations, enumerated with atoms chosen in
/// non-decreasing index order. Every result is re-checked to multiply out to s.
std::vector<Factorization> factorizations(const Sequence& s, const AtomSet& atoms);

LengthReport length_set(const Sequence& s, const AtomSet& atoms, bool keep_factorizations = false);
/// Uses the complete atom set of the sequence's support (finite groups).
LengthReport length_set(const Sequence& s, bool keep_factorizations = false);

struct DeltaReport {
  Support support;
  std::vector<std::size_t> deltas;
  std::size_t element_cap = 0;
  std::size_t sequences_checked = 0;
  // Always false: the union runs over a cap-bounded part of an infinite monoid.
  bool exhaustive = false;
};

/// Union of Delta(L(s)) over zero-sum s with |s| <= element_cap.
DeltaReport delta_of_monoid(const Support& support, std::size_t element_cap);
std::optional<std::size_t> min_delta(const Support& support, std::size_t element_cap);

struct SubsetDelta {
  Support support;
  std::optional<std::size_t> min_delta;
};

struct DeltaStarReport {
  Group group;
  std::vector<std::size_t> values;  // the set of minimal distances at the cap
  std::size_t element_cap = 0;
  std::vector<SubsetDelta> subsets;  // one per nonempty subset, by bitmask order
};

inline constexpr std::size_t kDefaultSubsetGuard = 8;

/// Sweeps every nonempty G0 of a finite group with |G| <= guard.
DeltaStarReport delta_star(const Group& g, std::size_t element_cap, std::size_t guard = kDefaultSubsetGuard,
                           unsigned threads = 1);

/// max{r(G) - 1, exp(G) - 2}, for finite G with |G| >= 3.
Integer max_delta_star_formula(const Group& g);

struct AampWitness {
  std::size_t d = 1;
  std::size_t bound = 0;
  long y = 0;
  std::vector<long> D_set;    // subset of [0, d] containing 0 and d
  std::vector<long> L_prime;  // relative to y, inside [-bound, -1]
  std::vector<long> L_star;   // relative to y, starts at 0
  std::vector<long> L_dprime; // relative to y, inside max L* + [1, bound]
};

/// Finds a decomposition of L as an almost arithmetic multiprogression with
/// difference d and the given bound, if there is one.
std::optional<AampWitness> aamp_check(const std::vector<long>& L, long d, long bound);
/// Smallest bound for which L is an AAMP with difference d, with its witness.
AampWitness minimal_aamp(const std::vector<long>& L, long d);
/// Checks a witness against the definition, literally.
bool validate_aamp(const std::vector<long>& L, const AampWitness& w);

struct HalfFactorialReport {
  bool half_factorial_at_cap = true;
  std::size_t element_cap = 0;
  std::size_t sequences_checked = 0;
  std::optional<Sequence> counterexample;
  std::vector<std::size_t> counterexample_lengths;
};

HalfFactorialReport half_factorial_check(const Support& support, std::size_t element_cap);

}  // namespace klab
