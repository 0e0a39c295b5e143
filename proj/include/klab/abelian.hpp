#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "klab/error.hpp"

namespace klab {

using Integer = mpz_class;

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);
  static IntMatrix diagonal(std::span<const Integer> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Integer> row(std::size_t r) const;
  std::vector<Integer> apply(std::span<const Integer> v) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);

  bool is_diagonal() const;
  Integer determinant() const;  // square only, fraction-free elimination

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal, d1 | d2 | ..., entries >= 0
  IntMatrix V;  // cols x cols, unimodular
};

/// U * m * V == D.
SmithForm smith_normal_form(const IntMatrix& m);

/// Z^free_rank (+) C_{d1} (+) ... (+) C_{dk} with d1 | d2 | ... | dk, every dj >= 2.
class Group {
 public:
  Group() = default;  // trivial group

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }
  std::size_t torsion_count() const noexcept { return factors_.size(); }
  std::size_t coordinate_count() const noexcept { return free_rank_ + factors_.size(); }

  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_trivial() const noexcept { return free_rank_ == 0 && factors_.empty(); }
  /// |G| for finite groups.
  std::optional<Integer> order() const;

  friend bool operator==(const Group&, const Group&) = default;

 private:
  friend class GroupBuilder;
  Group(std::size_t free_rank, std::vector<Integer> factors)
      : free_rank_(free_rank), factors_(std::move(factors)) {}

  std::size_t free_rank_ = 0;
  std::vector<Integer> factors_;
};

/// Coordinates of an element in the canonical decomposition of its group.
/// Torsion coordinate j is always reduced into [0, dj).
struct GroupElement {
  std::vector<Integer> free_part;
  std::vector<Integer> torsion_part;

  /// free_part followed by torsion_part.
  std::vector<Integer> coordinates() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  // Canonical element order: lexicographic on coordinates().
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b);
};

/// Homomorphism Z^n -> target, given by an integer matrix acting on source
/// coordinates followed by reduction in the target. Used as the projection
/// handle of a quotient and as component embeddings of a direct sum.
class Homomorphism {
 public:
  Homomorphism(Group target, IntMatrix matrix);

  const Group& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }
  std::size_t source_dimension() const noexcept { return matrix_.cols(); }

  GroupElement apply(std::span<const Integer> source_coordinates) const;
  GroupElement apply(const GroupElement& x) const;

 private:
  Group target_;
  IntMatrix matrix_;
};

struct Quotient {
  Group group;
  Homomorphism projection;
};

/// Canonical form of Z^generators / <columns of relations>.
Quotient present(std::size_t generators, const IntMatrix& relations);

/// Canonical form of Z^free_rank (+) C_{n1} (+) ...; the projection maps the
/// standard generators of the given decomposition into the canonical one.
Quotient group_from_spec_mapped(std::size_t free_rank, std::span<const Integer> torsion);
Group group_from_spec(std::size_t free_rank, std::span<const Integer> torsion);
Group group_from_spec(std::size_t free_rank, std::initializer_list<long> torsion);

struct DirectSum {
  Group group;
  std::vector<Homomorphism> embeddings;  // one per summand, from its coordinates
};

DirectSum direct_sum_mapped(std::span<const Group> groups);
Group direct_sum(std::span<const Group> groups);

Quotient quotient(const Group& g, std::span<const GroupElement> relations);

GroupElement zero_element(const Group& g);
GroupElement make_element(const Group& g, std::vector<Integer> free_part,
                          std::vector<Integer> torsion_part);
/// Element from a flat coordinate vector (free then torsion), reduced.
GroupElement element_from_coordinates(const Group& g, std::span<const Integer> coords);
bool is_member(const Group& g, const GroupElement& x);
void require_member(const Group& g, const GroupElement& x);

GroupElement element_add(const Group& g, const GroupElement& a, const GroupElement& b);
GroupElement element_neg(const Group& g, const GroupElement& a);
GroupElement element_scale(const Group& g, const Integer& k, const GroupElement& a);

/// nullopt means infinite order.
std::optional<Integer> element_order(const Group& g, const GroupElement& x);
/// nullopt means infinite exponent.
std::optional<Integer> exponent(const Group& g);
/// Maximum over primes p of the p-rank; free rank counts at every prime.
std::size_t rank(const Group& g);

/// Every element of a finite group in canonical order.
std::vector<GroupElement> all_elements(const Group& g);
/// Images of the standard generators: free basis vectors then torsion units.
std::vector<GroupElement> standard_generators(const Group& g);

// Text forms. Group grammar: `Z^r x C2 x C6`, `0` or `trivial` for {0}.
Group parse_group(std::string_view text);
std::string format_group(const Group& g);
// Elements: `([f1,...],[t1,...])`, a flat tuple `(c1,...)`, or a bare
// integer when the group has exactly one coordinate.
GroupElement parse_element(const Group& g, std::string_view text);
std::string format_element(const GroupElement& x);
std::string format_element_compact(const GroupElement& x);

Integer positive_mod(const Integer& a, const Integer& m);

}  // namespace klab
