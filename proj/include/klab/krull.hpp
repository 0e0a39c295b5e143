#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klab/abelian.hpp"
#include "klab/zerosum.hpp"

namespace klab {

/// Number of primes in a class: finite, or omega (infinitely many).
class PrimeCount {
 public:
  static PrimeCount omega() { return PrimeCount(true, 0); }
  static PrimeCount finite(std::size_t n) { return PrimeCount(false, n); }

  bool is_omega() const noexcept { return omega_; }
  std::size_t value() const noexcept { return n_; }  // finite counts only
  bool is_zero() const noexcept { return !omega_ && n_ == 0; }

  friend PrimeCount operator+(PrimeCount a, PrimeCount b) {
    if (a.omega_ || b.omega_) return omega();
    return finite(a.n_ + b.n_);
  }
  friend bool operator==(const PrimeCount&, const PrimeCount&) = default;

 private:
  PrimeCount(bool omega, std::size_t n) : omega_(omega), n_(n) {}
  bool omega_;
  std::size_t n_;
};

struct PrimeClass {
  GroupElement element;
  PrimeCount count = PrimeCount::omega();
  // Names of the individual primes; only for finite counts, one per prime.
  std::vector<std::string> labels;
};

/// A class group together with the number of prime divisors in each class.
class KrullPresentation {
 public:
  /// Validates the classes (distinct members that generate the group), sorts
  /// them canonically and fills in default labels "p<class>.<instance>".
  KrullPresentation(Group class_group, std::vector<PrimeClass> classes);

  const Group& class_group() const noexcept { return group_; }
  const std::vector<PrimeClass>& classes() const noexcept { return classes_; }
  std::optional<std::size_t> class_index(const GroupElement& x) const;

  /// Classes with at least one prime, as a support G0.
  Support populated_support() const;
  /// True when the group is finite and every class contains a prime.
  bool every_class_populated() const;
  bool all_omega() const;

  friend bool operator==(const KrullPresentation&, const KrullPresentation&);

 private:
  Group group_;
  std::vector<PrimeClass> classes_;
};

struct ComponentModel {
  KrullPresentation presentation;
  std::vector<Group> components;
  std::vector<Homomorphism> embeddings;                    // component -> class group
  std::vector<std::vector<GroupElement>> component_generators;  // images of standard generators
};

/// Class group = direct sum of the components, every class holding omega
/// primes. Groups with free rank need a coordinate box |free coord| <= box.
ComponentModel component_model(const std::vector<Group>& groups, std::optional<Integer> box = std::nullopt);

struct Inversion {
  std::vector<GroupElement> classes;  // invert every prime of these classes
  std::vector<std::string> primes;    // invert individual labeled primes
};

/// Quotient of the class group by the classes of the inverted primes; the
/// surviving classes are pushed through the projection, counts merged.
KrullPresentation localize(const KrullPresentation& p, const Inversion& inverted);

/// Inverts the generator classes of every component except `keep`.
KrullPresentation localize_to_component(const ComponentModel& model, std::size_t keep);

struct LabeledPrime {
  std::size_t class_index = 0;
  std::size_t instance = 0;
  friend auto operator<=>(const LabeledPrime&, const LabeledPrime&) = default;
};

/// Element of the reduced Krull monoid: a zero-class product of labeled primes.
class MonoidElement {
 public:
  MonoidElement(KrullPresentation presentation, std::map<LabeledPrime, std::uint32_t> primes);

  const KrullPresentation& presentation() const noexcept { return presentation_; }
  const std::map<LabeledPrime, std::uint32_t>& primes() const noexcept { return primes_; }
  std::size_t prime_count() const;

 private:
  KrullPresentation presentation_;
  std::map<LabeledPrime, std::uint32_t> primes_;
};

/// Replaces every prime by its class; a sequence over the populated classes.
Sequence transfer(const MonoidElement& a);

/// Set of lengths computed on the labeled primes themselves: the atoms are
/// the minimal zero-class sub-products of a.
std::vector<std::size_t> monoid_length_set(const MonoidElement& a);

PrimeCount parse_count(std::string_view text);
std::string format_count(const PrimeCount& c);

}  // namespace klab
