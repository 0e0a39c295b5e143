#include <algorithm>
#include <numeric>

#include "klab/abelian.hpp"

namespace klab {

class GroupBuilder {
 public:
  static Group make(std::size_t free_rank, std::vector<Integer> factors) {
    return Group(free_rank, std::move(factors));
  }
};

Integer positive_mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::optional<Integer> Group::order() const {
  if (free_rank_ != 0) return std::nullopt;
  Integer n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

std::vector<Integer> GroupElement::coordinates() const {
  std::vector<Integer> out = free_part;
  out.insert(out.end(), torsion_part.begin(), torsion_part.end());
  return out;
}

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
  const auto ca = a.coordinates();
  const auto cb = b.coordinates();
  const std::size_t n = std::min(ca.size(), cb.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = cmp(ca[i], cb[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return ca.size() <=> cb.size();
}

Homomorphism::Homomorphism(Group target, IntMatrix matrix)
    : target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.coordinate_count())
    throw Error(ErrorKind::InvalidInput, "homomorphism matrix does not match target coordinates");
}

GroupElement Homomorphism::apply(std::span<const Integer> source_coordinates) const {
  if (source_coordinates.size() != matrix_.cols())
    throw Error(ErrorKind::InvalidElement, "element has the wrong number of coordinates for this map");
  return element_from_coordinates(target_, matrix_.apply(source_coordinates));
}

GroupElement Homomorphism::apply(const GroupElement& x) const {
  const auto coords = x.coordinates();
  return apply(std::span<const Integer>(coords));
}

Quotient present(std::size_t generators, const IntMatrix& relations) {
  if (relations.rows() != generators)
    throw Error(ErrorKind::InvalidInput, "relation matrix must have one row per generator");
  const SmithForm snf = smith_normal_form(relations);
  const std::size_t diag = std::min(relations.rows(), relations.cols());

  // New coordinates are y = U x. Unit diagonal entries drop out, entries > 1
  // become torsion, zero entries and rows past the diagonal stay free.
  std::vector<std::size_t> free_rows, torsion_rows;
  std::vector<Integer> factors;
  for (std::size_t i = 0; i < generators; ++i) {
    const Integer d = i < diag ? snf.D(i, i) : Integer(0);
    if (d == 0) {
      free_rows.push_back(i);
    } else if (d != 1) {
      torsion_rows.push_back(i);
      factors.push_back(d);
    }
  }
  Group g = GroupBuilder::make(free_rows.size(), std::move(factors));

  IntMatrix projection(g.coordinate_count(), generators);
  std::size_t out = 0;
  for (auto rows : {&free_rows, &torsion_rows})
    for (std::size_t r : *rows) {
      for (std::size_t c = 0; c < generators; ++c) projection(out, c) = snf.U(r, c);
      ++out;
    }
  return {g, Homomorphism(g, std::move(projection))};
}

Quotient group_from_spec_mapped(std::size_t free_rank, std::span<const Integer> torsion) {
  for (const auto& n : torsion)
    if (n < 2)
      throw Error(ErrorKind::InvalidSpec,
                  "cyclic factor orders must be >= 2, got " + n.get_str());
  const std::size_t n = free_rank + torsion.size();
  IntMatrix rel(n, torsion.size());
  for (std::size_t j = 0; j < torsion.size(); ++j) rel(free_rank + j, j) = torsion[j];
  return present(n, rel);
}

Group group_from_spec(std::size_t free_rank, std::span<const Integer> torsion) {
  return group_from_spec_mapped(free_rank, torsion).group;
}

Group group_from_spec(std::size_t free_rank, std::initializer_list<long> torsion) {
  std::vector<Integer> t;
  for (long v : torsion) t.emplace_back(v);
  return group_from_spec(free_rank, t);
}

DirectSum direct_sum_mapped(std::span<const Group> groups) {
  std::size_t n = 0, m = 0;
  for (const auto& g : groups) {
    n += g.coordinate_count();
    m += g.torsion_count();
  }
  IntMatrix rel(n, m);
  std::size_t offset = 0, col = 0;
  for (const auto& g : groups) {
    for (std::size_t j = 0; j < g.torsion_count(); ++j)
      rel(offset + g.free_rank() + j, col++) = g.invariant_factors()[j];
    offset += g.coordinate_count();
  }
  Quotient q = present(n, rel);

  DirectSum out{q.group, {}};
  offset = 0;
  for (const auto& g : groups) {
    const IntMatrix& p = q.projection.matrix();
    IntMatrix block(p.rows(), g.coordinate_count());
    for (std::size_t r = 0; r < p.rows(); ++r)
      for (std::size_t c = 0; c < g.coordinate_count(); ++c) block(r, c) = p(r, offset + c);
    out.embeddings.emplace_back(q.group, std::move(block));
    offset += g.coordinate_count();
  }
  return out;
}

Group direct_sum(std::span<const Group> groups) { return direct_sum_mapped(groups).group; }

Quotient quotient(const Group& g, std::span<const GroupElement> relations) {
  for (const auto& r : relations) require_member(g, r);
  const std::size_t n = g.coordinate_count();
  IntMatrix rel(n, g.torsion_count() + relations.size());
  for (std::size_t j = 0; j < g.torsion_count(); ++j)
    rel(g.free_rank() + j, j) = g.invariant_factors()[j];
  for (std::size_t k = 0; k < relations.size(); ++k) {
    const auto coords = relations[k].coordinates();
    for (std::size_t i = 0; i < n; ++i) rel(i, g.torsion_count() + k) = coords[i];
  }
  return present(n, rel);
}

GroupElement zero_element(const Group& g) {
  return {std::vector<Integer>(g.free_rank(), Integer(0)),
          std::vector<Integer>(g.torsion_count(), Integer(0))};
}

GroupElement make_element(const Group& g, std::vector<Integer> free_part,
                          std::vector<Integer> torsion_part) {
  if (free_part.size() != g.free_rank() || torsion_part.size() != g.torsion_count())
    throw Error(ErrorKind::InvalidElement, "element coordinates do not match the group " + format_group(g));
  for (std::size_t j = 0; j < torsion_part.size(); ++j)
    torsion_part[j] = positive_mod(torsion_part[j], g.invariant_factors()[j]);
  return {std::move(free_part), std::move(torsion_part)};
}

GroupElement element_from_coordinates(const Group& g, std::span<const Integer> coords) {
  if (coords.size() != g.coordinate_count())
    throw Error(ErrorKind::InvalidElement, "element coordinates do not match the group " + format_group(g));
  return make_element(g, {coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(g.free_rank())},
                      {coords.begin() + static_cast<std::ptrdiff_t>(g.free_rank()), coords.end()});
}

bool is_member(const Group& g, const GroupElement& x) {
  if (x.free_part.size() != g.free_rank() || x.torsion_part.size() != g.torsion_count()) return false;
  for (std::size_t j = 0; j < x.torsion_part.size(); ++j)
    if (x.torsion_part[j] < 0 || x.torsion_part[j] >= g.invariant_factors()[j]) return false;
  return true;
}

void require_member(const Group& g, const GroupElement& x) {
  if (!is_member(g, x))
    throw Error(ErrorKind::InvalidElement,
                "element " + format_element(x) + " is not a reduced element of " + format_group(g));
}

GroupElement element_add(const Group& g, const GroupElement& a, const GroupElement& b) {
  require_member(g, a);
  require_member(g, b);
  GroupElement out = a;
  for (std::size_t i = 0; i < out.free_part.size(); ++i) out.free_part[i] += b.free_part[i];
  for (std::size_t j = 0; j < out.torsion_part.size(); ++j) {
    out.torsion_part[j] += b.torsion_part[j];
    if (out.torsion_part[j] >= g.invariant_factors()[j]) out.torsion_part[j] -= g.invariant_factors()[j];
  }
  return out;
}

GroupElement element_neg(const Group& g, const GroupElement& a) {
  return element_scale(g, Integer(-1), a);
}

GroupElement element_scale(const Group& g, const Integer& k, const GroupElement& a) {
  require_member(g, a);
  GroupElement out = a;
  for (auto& f : out.free_part) f *= k;
  for (std::size_t j = 0; j < out.torsion_part.size(); ++j)
    out.torsion_part[j] = positive_mod(out.torsion_part[j] * k, g.invariant_factors()[j]);
  return out;
}

std::optional<Integer> element_order(const Group& g, const GroupElement& x) {
  require_member(g, x);
  for (const auto& f : x.free_part)
    if (f != 0) return std::nullopt;
  Integer n = 1;
  for (std::size_t j = 0; j < x.torsion_part.size(); ++j) {
    const Integer& d = g.invariant_factors()[j];
    Integer gd;
    mpz_gcd(gd.get_mpz_t(), x.torsion_part[j].get_mpz_t(), d.get_mpz_t());
    const Integer o = d / gd;
    mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), o.get_mpz_t());
  }
  return n;
}

std::optional<Integer> exponent(const Group& g) {
  if (!g.is_finite()) return std::nullopt;
  if (g.invariant_factors().empty()) return Integer(1);
  return g.invariant_factors().back();
}

std::size_t rank(const Group& g) {
  // Any prime dividing d1 divides every invariant factor, so it attains the
  // maximal p-rank.
  return g.free_rank() + g.torsion_count();
}

std::vector<GroupElement> all_elements(const Group& g) {
  if (!g.is_finite()) throw Error(ErrorKind::Unsupported, "cannot list the elements of an infinite group");
  std::vector<GroupElement> out;
  GroupElement cur = zero_element(g);
  const auto& d = g.invariant_factors();
  for (;;) {
    out.push_back(cur);
    std::size_t j = d.size();
    while (j > 0) {
      --j;
      cur.torsion_part[j] += 1;
      if (cur.torsion_part[j] < d[j]) break;
      cur.torsion_part[j] = 0;
      if (j == 0) return out;
    }
    if (d.empty()) return out;
  }
}

std::vector<GroupElement> standard_generators(const Group& g) {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < g.coordinate_count(); ++i) {
    std::vector<Integer> c(g.coordinate_count(), Integer(0));
    c[i] = 1;
    out.push_back(element_from_coordinates(g, c));
  }
  return out;
}

}  // namespace klab
