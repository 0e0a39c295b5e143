#include <algorithm>
#include <set>

#include "klab/krull.hpp"
#include "packed.hpp"
#include "text.hpp"

namespace klab {

KrullPresentation::KrullPresentation(Group class_group, std::vector<PrimeClass> classes)
    : group_(std::move(class_group)), classes_(std::move(classes)) {
  for (const auto& c : classes_) require_member(group_, c.element);
  std::sort(classes_.begin(), classes_.end(),
            [](const PrimeClass& a, const PrimeClass& b) { return a.element < b.element; });
  for (std::size_t i = 1; i < classes_.size(); ++i)
    if (classes_[i].element == classes_[i - 1].element)
      throw Error(ErrorKind::InvalidInput, "class " + format_element(classes_[i].element) + " listed twice");

  std::vector<GroupElement> gens;
  for (const auto& c : classes_) gens.push_back(c.element);
  if (!quotient(group_, gens).group.is_trivial())
    throw Error(ErrorKind::InvalidInput, "the listed classes do not generate the class group " + format_group(group_));

  for (std::size_t i = 0; i < classes_.size(); ++i) {
    auto& c = classes_[i];
    if (c.count.is_omega()) {
      if (!c.labels.empty()) throw Error(ErrorKind::InvalidInput, "labels are only allowed for finite counts");
      continue;
    }
    if (c.labels.empty())
      for (std::size_t j = 0; j < c.count.value(); ++j)
        c.labels.push_back("p" + std::to_string(i) + "." + std::to_string(j));
    if (c.labels.size() != c.count.value())
      throw Error(ErrorKind::InvalidInput, "class " + format_element(c.element) + " needs one label per prime");
    std::sort(c.labels.begin(), c.labels.end());
  }
  std::set<std::string> names;
  for (const auto& c : classes_)
    for (const auto& l : c.labels)
      if (!names.insert(l).second) throw Error(ErrorKind::InvalidInput, "duplicate prime label '" + l + "'");
}

std::optional<std::size_t> KrullPresentation::class_index(const GroupElement& x) const {
  for (std::size_t i = 0; i < classes_.size(); ++i)
    if (classes_[i].element == x) return i;
  return std::nullopt;
}

Support KrullPresentation::populated_support() const {
  std::vector<GroupElement> elems;
  for (const auto& c : classes_)
    if (!c.count.is_zero()) elems.push_back(c.element);
  return Support(group_, std::move(elems));
}

bool KrullPresentation::every_class_populated() const {
  if (!group_.is_finite()) return false;
  const Integer populated = static_cast<unsigned long>(populated_support().size());
  return populated == *group_.order();
}

bool KrullPresentation::all_omega() const {
  return std::all_of(classes_.begin(), classes_.end(), [](const PrimeClass& c) { return c.count.is_omega(); });
}

bool operator==(const KrullPresentation& a, const KrullPresentation& b) {
  if (!(a.group_ == b.group_) || a.classes_.size() != b.classes_.size()) return false;
  for (std::size_t i = 0; i < a.classes_.size(); ++i) {
    const auto& x = a.classes_[i];
    const auto& y = b.classes_[i];
    if (!(x.element == y.element) || !(x.count == y.count) || x.labels != y.labels) return false;
  }
  return true;
}

ComponentModel component_model(const std::vector<Group>& groups, std::optional<Integer> box) {
  if (groups.empty()) throw Error(ErrorKind::InvalidInput, "the model needs at least one component group");
  DirectSum sum = direct_sum_mapped(groups);
  const Group& g = sum.group;

  std::vector<GroupElement> classes;
  if (g.is_finite()) {
    classes = all_elements(g);
  } else {
    if (!box || *box < 1)
      throw Error(ErrorKind::NeedsBox, "a class group with free rank needs a coordinate box of size >= 1");
    // Every torsion element combined with free coordinates in [-box, box].
    const Group torsion = group_from_spec(0, g.invariant_factors());
    const auto torsion_elems = all_elements(torsion);
    std::vector<Integer> free(g.free_rank(), -*box);
    for (;;) {
      for (const auto& t : torsion_elems) classes.push_back(make_element(g, free, t.torsion_part));
      std::size_t i = 0;
      while (i < free.size() && free[i] == *box) free[i++] = -*box;
      if (i == free.size()) break;
      free[i] += 1;
    }
  }
  std::vector<PrimeClass> pcs;
  for (auto& c : classes) pcs.push_back({std::move(c), PrimeCount::omega(), {}});

  ComponentModel model{KrullPresentation(g, std::move(pcs)), groups, sum.embeddings, {}};
  for (std::size_t i = 0; i < groups.size(); ++i) {
    std::vector<GroupElement> gens;
    for (const auto& e : standard_generators(groups[i])) gens.push_back(sum.embeddings[i].apply(e));
    model.component_generators.push_back(std::move(gens));
  }
  return model;
}

KrullPresentation localize(const KrullPresentation& p, const Inversion& inverted) {
  const auto& g = p.class_group();
  std::vector<PrimeClass> remaining = p.classes();
  std::vector<GroupElement> relations;

  for (const auto& x : inverted.classes) {
    if (!is_member(g, x))
      throw Error(ErrorKind::InvalidLocalization, "class " + format_element(x) + " is not in " + format_group(g));
    auto idx = p.class_index(x);
    if (!idx || p.classes()[*idx].count.is_zero())
      throw Error(ErrorKind::InvalidLocalization, "class " + format_element(x) + " holds no primes");
    relations.push_back(x);
    remaining[*idx].count = PrimeCount::finite(0);
    remaining[*idx].labels.clear();
  }
  for (const auto& label : inverted.primes) {
    bool found = false;
    for (auto& c : remaining) {
      auto it = std::find(c.labels.begin(), c.labels.end(), label);
      if (it == c.labels.end()) continue;
      c.labels.erase(it);
      c.count = PrimeCount::finite(c.count.value() - 1);
      relations.push_back(c.element);
      found = true;
      break;
    }
    if (!found) throw Error(ErrorKind::InvalidLocalization, "no prime labeled '" + label + "' is available");
  }

  const Quotient q = quotient(g, relations);
  std::vector<PrimeClass> merged;
  for (const auto& c : remaining) {
    if (c.count.is_zero()) continue;
    GroupElement image = q.projection.apply(c.element);
    auto it = std::find_if(merged.begin(), merged.end(), [&](const PrimeClass& m) { return m.element == image; });
    if (it == merged.end()) {
      merged.push_back({std::move(image), c.count, c.labels});
    } else {
      it->count = it->count + c.count;
      if (it->count.is_omega()) it->labels.clear();
      else it->labels.insert(it->labels.end(), c.labels.begin(), c.labels.end());
    }
  }
  return KrullPresentation(q.group, std::move(merged));
}

KrullPresentation localize_to_component(const ComponentModel& model, std::size_t keep) {
  if (keep >= model.components.size())
    throw Error(ErrorKind::InvalidLocalization, "component index " + std::to_string(keep) + " out of range");
  Inversion inv;
  for (std::size_t i = 0; i < model.components.size(); ++i) {
    if (i == keep) continue;
    for (const auto& gen : model.component_generators[i]) {
      if (gen == zero_element(model.presentation.class_group())) continue;
      if (std::find(inv.classes.begin(), inv.classes.end(), gen) == inv.classes.end()) inv.classes.push_back(gen);
    }
  }
  return localize(model.presentation, inv);
}

MonoidElement::MonoidElement(KrullPresentation presentation, std::map<LabeledPrime, std::uint32_t> primes)
    : presentation_(std::move(presentation)), primes_(std::move(primes)) {
  const auto& g = presentation_.class_group();
  GroupElement total = zero_element(g);
  for (auto it = primes_.begin(); it != primes_.end();) {
    const auto& [prime, mult] = *it;
    if (prime.class_index >= presentation_.classes().size())
      throw Error(ErrorKind::InvalidInput, "prime refers to an unknown class");
    const auto& cls = presentation_.classes()[prime.class_index];
    if (!cls.count.is_omega() && prime.instance >= cls.count.value())
      throw Error(ErrorKind::InvalidInput, "class " + format_element(cls.element) + " has only " +
                                               std::to_string(cls.count.value()) + " primes");
    if (mult == 0) {
      it = primes_.erase(it);
      continue;
    }
    total = element_add(g, total, element_scale(g, Integer(static_cast<unsigned long>(mult)), cls.element));
    ++it;
  }
  if (!(total == zero_element(g)))
    throw Error(ErrorKind::InvalidInput, "the class sum of the primes is " + format_element(total) +
                                             ", not zero; this is not an element of the monoid");
}

std::size_t MonoidElement::prime_count() const {
  std::size_t n = 0;
  for (const auto& [_, m] : primes_) n += m;
  return n;
}

Sequence transfer(const MonoidElement& a) {
  const auto& pres = a.presentation();
  const Support support = pres.populated_support();
  Multiplicities m(support.size(), 0);
  for (const auto& [prime, mult] : a.primes()) {
    const auto idx = support.index_of(pres.classes()[prime.class_index].element);
    m[*idx] += mult;
  }
  return Sequence(support, std::move(m));
}

std::vector<std::size_t> monoid_length_set(const MonoidElement& a) {
  const std::size_t total = a.prime_count();
  if (total == 0) return {0};

  // One item per distinct labeled prime; several items may share a class.
  const auto& pres = a.presentation();
  std::vector<GroupElement> values;
  Multiplicities caps;
  for (const auto& [prime, mult] : a.primes()) {
    values.push_back(pres.classes()[prime.class_index].element);
    caps.push_back(mult);
  }
  const detail::PackedArithmetic arith(pres.class_group(), values, total);
  auto atoms = detail::minimal_zero_sums(arith, total, caps);
  detail::LengthTable table(std::move(atoms), values.size());
  const auto& L = table.lengths(caps);
  return {L.begin(), L.end()};
}

PrimeCount parse_count(std::string_view s) {
  s = text::trim(s);
  if (s == "omega" || s == "w" || s == "inf") return PrimeCount::omega();
  const Integer n = text::parse_integer(s, ErrorKind::InvalidInput);
  if (n < 0 || !n.fits_ulong_p()) throw Error(ErrorKind::InvalidInput, "prime count must be a non-negative integer or 'omega'");
  return PrimeCount::finite(n.get_ui());
}

std::string format_count(const PrimeCount& c) { return c.is_omega() ? "omega" : std::to_string(c.value()); }

}  // namespace klab
