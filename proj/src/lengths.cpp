#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_map>

#include "klab/lengths.hpp"
#include "packed.hpp"

namespace klab {

std::vector<std::size_t> delta_of(const std::vector<std::size_t>& sorted_set) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < sorted_set.size(); ++i) out.push_back(sorted_set[i] - sorted_set[i - 1]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void require_factorizable(const Sequence& s, const AtomSet& atoms) {
  if (!(s.support() == atoms.support))
    throw Error(ErrorKind::InvalidInput, "sequence and atom set use different supports");
  if (!is_zero_sum(s))
    throw Error(ErrorKind::InvalidInput, "sequence " + format_sequence(s) + " is not zero-sum");
}

std::vector<std::size_t> dividing_atoms(const Sequence& s, const AtomSet& atoms) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < atoms.atoms.size(); ++a)
    if (atoms.atoms[a].divides(s)) out.push_back(a);
  return out;
}

bool subtract_if_divides(const Multiplicities& atom, const Multiplicities& from, Multiplicities& into) {
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (atom[i] > from[i]) return false;
    into[i] = from[i] - atom[i];
  }
  return true;
}

bool is_empty(const Multiplicities& m) {
  return std::all_of(m.begin(), m.end(), [](std::uint32_t v) { return v == 0; });
}

struct Enumerator {
  const AtomSet& atoms;
  const std::vector<std::size_t>& candidates;
  std::vector<std::size_t> chosen;
  std::vector<Factorization> out;

  void run(const Multiplicities& rest, std::size_t start) {
    if (is_empty(rest)) {
      out.push_back({chosen});
      return;
    }
    Multiplicities next(rest.size());
    for (std::size_t c = start; c < candidates.size(); ++c) {
      if (!subtract_if_divides(atoms.atoms[candidates[c]].multiplicities(), rest, next)) continue;
      chosen.push_back(candidates[c]);
      run(next, c);
      chosen.pop_back();
    }
  }
};

using LengthCounts = std::map<std::size_t, Integer>;

struct Counter {
  const AtomSet& atoms;
  const std::vector<std::size_t>& candidates;
  std::unordered_map<Multiplicities, LengthCounts, detail::MultiplicitiesHash> memo;

  const LengthCounts& run(const Multiplicities& rest, std::size_t start) {
    Multiplicities key = rest;
    key.push_back(static_cast<std::uint32_t>(start));
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    LengthCounts counts;
    if (is_empty(rest)) {
      counts[0] = 1;
    } else {
      Multiplicities next(rest.size());
      for (std::size_t c = start; c < candidates.size(); ++c) {
        if (!subtract_if_divides(atoms.atoms[candidates[c]].multiplicities(), rest, next)) continue;
        for (const auto& [len, n] : run(next, c)) counts[len + 1] += n;
      }
    }
    return memo.emplace(std::move(key), std::move(counts)).first->second;
  }
};

void check_product(const Sequence& s, const AtomSet& atoms, const Factorization& f) {
  Multiplicities total(s.support().size(), 0);
  for (std::size_t a : f.atom_indices)
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += atoms.atoms[a].multiplicity(i);
  if (total != s.multiplicities())
    throw Error(ErrorKind::InvalidInput, "internal: factorization does not multiply out to its target");
}

AtomSet complete_atoms(const Support& support) {
  if (!support.group().is_finite())
    throw Error(ErrorKind::NeedsCap, "length computations without an explicit atom set need a finite group");
  return atoms(support);
}

}  // namespace

std::vector<Factorization> factorizations(const Sequence& s, const AtomSet& atoms) {
  require_factorizable(s, atoms);
  const auto candidates = dividing_atoms(s, atoms);
  Enumerator e{atoms, candidates, {}, {}};
  e.run(s.multiplicities(), 0);
  for (const auto& f : e.out) check_product(s, atoms, f);
  return std::move(e.out);
}

LengthReport length_set(const Sequence& s, const AtomSet& atoms, bool keep_factorizations) {
  require_factorizable(s, atoms);
  LengthReport report;
  report.target = s;
  report.complete = atoms.complete || s.length() <= atoms.cap_used;

  const auto candidates = dividing_atoms(s, atoms);
  Counter counter{atoms, candidates, {}};
  report.factorization_counts = counter.run(s.multiplicities(), 0);
  for (const auto& [len, n] : report.factorization_counts) report.length_set.push_back(len);
  report.delta_set = delta_of(report.length_set);
  if (keep_factorizations) report.factorizations = factorizations(s, atoms);
  return report;
}

LengthReport length_set(const Sequence& s, bool keep_factorizations) {
  return length_set(s, complete_atoms(s.support()), keep_factorizations);
}

DeltaReport delta_of_monoid(const Support& support, std::size_t element_cap) {
  DeltaReport report{support, {}, element_cap, 0, false};
  if (support.size() == 0) return report;
  const AtomSet a = complete_atoms(support);
  std::vector<Multiplicities> atom_mults;
  for (const auto& atom : a.atoms) atom_mults.push_back(atom.multiplicities());
  detail::LengthTable table(std::move(atom_mults), support.size());

  std::vector<bool> seen;
  const detail::PackedArithmetic arith(support.group(), support.elements(), element_cap);
  detail::for_each_zero_sum(arith, element_cap, false, [&](const Multiplicities& m) {
    ++report.sequences_checked;
    const auto& L = table.lengths(m);
    for (std::size_t i = 1; i < L.size(); ++i) {
      const std::size_t d = L[i] - L[i - 1];
      if (seen.size() <= d) seen.resize(d + 1, false);
      seen[d] = true;
    }
    return true;
  });
  for (std::size_t d = 0; d < seen.size(); ++d)
    if (seen[d]) report.deltas.push_back(d);
  return report;
}

std::optional<std::size_t> min_delta(const Support& support, std::size_t element_cap) {
  const auto r = delta_of_monoid(support, element_cap);
  if (r.deltas.empty()) return std::nullopt;
  return r.deltas.front();
}

DeltaStarReport delta_star(const Group& g, std::size_t element_cap, std::size_t guard, unsigned threads) {
  if (!g.is_finite()) throw Error(ErrorKind::Unsupported, "the set of minimal distances is swept only for finite groups");
  const Integer order = *g.order();
  if (order > static_cast<unsigned long>(guard))
    throw Error(ErrorKind::GuardExceeded, "group of order " + order.get_str() + " exceeds the subset-sweep guard of " +
                                              std::to_string(guard) + " (raise it with --guard)");
  if (order > 30) throw Error(ErrorKind::Unsupported, "subset sweeps are limited to groups of order <= 30");

  const Support whole = Support::whole_group(g);
  const std::uint64_t masks = (std::uint64_t{1} << whole.size()) - 1;
  DeltaStarReport report{g, {}, element_cap, std::vector<SubsetDelta>(masks)};

  std::atomic<std::uint64_t> next{1};
  auto worker = [&] {
    for (std::uint64_t mask = next++; mask <= masks; mask = next++) {
      Support sub = whole.subset(mask);
      auto md = min_delta(sub, element_cap);
      report.subsets[mask - 1] = {std::move(sub), md};
    }
  };
  const unsigned n = std::max(1u, threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }

  for (const auto& s : report.subsets)
    if (s.min_delta) report.values.push_back(*s.min_delta);
  std::sort(report.values.begin(), report.values.end());
  report.values.erase(std::unique(report.values.begin(), report.values.end()), report.values.end());
  return report;
}

Integer max_delta_star_formula(const Group& g) {
  if (!g.is_finite() || *g.order() < 3)
    throw Error(ErrorKind::OutOfHypothesis, "the max Delta* formula is stated for finite groups with |G| >= 3");
  const Integer r_term = Integer(static_cast<unsigned long>(rank(g))) - 1;
  const Integer e_term = *exponent(g) - 2;
  return std::max(r_term, e_term);
}

HalfFactorialReport half_factorial_check(const Support& support, std::size_t element_cap) {
  HalfFactorialReport report;
  report.element_cap = element_cap;
  if (support.size() == 0) return report;
  const AtomSet a = complete_atoms(support);
  std::vector<Multiplicities> atom_mults;
  for (const auto& atom : a.atoms) atom_mults.push_back(atom.multiplicities());
  detail::LengthTable table(std::move(atom_mults), support.size());

  const detail::PackedArithmetic arith(support.group(), support.elements(), element_cap);
  detail::for_each_zero_sum(arith, element_cap, false, [&](const Multiplicities& m) {
    ++report.sequences_checked;
    const auto& L = table.lengths(m);
    if (L.size() > 1) {
      report.half_factorial_at_cap = false;
      report.counterexample = Sequence(support, m);
      report.counterexample_lengths.assign(L.begin(), L.end());
      return false;
    }
    return true;
  });
  return report;
}

}  // namespace klab
