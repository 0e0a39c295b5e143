#include <algorithm>
#include <map>

#include "klab/realize.hpp"
#include "packed.hpp"

namespace klab {

std::vector<Group> default_family() {
  std::vector<Group> out;
  for (long n = 2; n <= 8; ++n) out.push_back(group_from_spec(0, {n}));
  out.push_back(group_from_spec(0, {2, 2}));
  out.push_back(group_from_spec(0, {2, 2, 2}));
  out.push_back(group_from_spec(0, {3, 3}));
  out.push_back(group_from_spec(0, {2, 4}));
  out.push_back(group_from_spec(0, {2, 6}));
  return out;
}

namespace {

void validate_task(const RealizationTask& task) {
  const auto& L = task.target_lengths;
  if (L.empty()) throw Error(ErrorKind::InvalidInput, "the target set of lengths is empty");
  for (std::size_t i = 1; i < L.size(); ++i)
    if (L[i] <= L[i - 1]) throw Error(ErrorKind::InvalidInput, "target lengths must be strictly increasing");
  if (L.front() < 2) throw Error(ErrorKind::OutOfHypothesis, "lengths must be ≥ 2");
  if (task.multiplicities.size() != L.size())
    throw Error(ErrorKind::InvalidInput, "need one multiplicity per target length");
  for (auto n : task.multiplicities)
    if (n < 1) throw Error(ErrorKind::InvalidInput, "multiplicities must be ≥ 1");
}

bool counts_meet(const LengthReport& r, const RealizationTask& task) {
  for (std::size_t i = 0; i < task.target_lengths.size(); ++i) {
    auto it = r.factorization_counts.find(task.target_lengths[i]);
    if (it == r.factorization_counts.end() || it->second < static_cast<unsigned long>(task.multiplicities[i]))
      return false;
  }
  return true;
}

// Recounts the factorizations by explicit enumeration and compares with the
// memoized counts.
void revalidate(const RealizationWitness& w, const RealizationTask& task, const AtomSet& atoms) {
  std::map<std::size_t, Integer> recount;
  for (const auto& f : factorizations(w.sequence, atoms)) recount[f.length()] += 1;
  std::vector<std::size_t> lengths;
  for (const auto& [len, _] : recount) lengths.push_back(len);
  if (recount != w.report.factorization_counts || lengths != task.target_lengths)
    throw Error(ErrorKind::InvalidInput, "internal: realization witness " + format_sequence(w.sequence) +
                                             " failed its independent recount");
}

// Next k-combination of [0, n) in lex order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

RealizationResult witness_search(const RealizationTask& task) {
  validate_task(task);
  const auto family = task.family.empty() ? default_family() : task.family;
  RealizationResult result;

  for (const auto& g : family) {
    if (!g.is_finite()) throw Error(ErrorKind::Unsupported, "realization search runs over finite groups only");
    // Class 0 primes only shift every length, so candidates avoid 0.
    std::vector<GroupElement> nonzero;
    for (auto& x : all_elements(g))
      if (!(x == zero_element(g))) nonzero.push_back(std::move(x));

    GroupSearchLog log{g};
    // A sequence with min L = m1 is a product of m1 atoms of length <= D(G).
    log.max_sequence_length = task.target_lengths.front() * davenport(g);
    if (task.max_sequence_length) log.max_sequence_length = std::min(log.max_sequence_length, *task.max_sequence_length);
    log.max_support_size = nonzero.size();
    if (task.max_support_size) log.max_support_size = std::min(log.max_support_size, *task.max_support_size);

    for (std::size_t size = 1; size <= log.max_support_size && !result.witness; ++size) {
      std::vector<std::size_t> pick(size);
      for (std::size_t i = 0; i < size; ++i) pick[i] = i;
      do {
        std::vector<GroupElement> elems;
        for (auto i : pick) elems.push_back(nonzero[i]);
        const Support support(g, std::move(elems));
        ++log.supports_tried;

        const AtomSet atom_set = atoms(support);
        std::vector<Multiplicities> atom_mults;
        for (const auto& a : atom_set.atoms) atom_mults.push_back(a.multiplicities());
        detail::LengthTable table(std::move(atom_mults), support.size());
        const detail::PackedArithmetic arith(g, support.elements(), log.max_sequence_length);

        detail::for_each_zero_sum(arith, log.max_sequence_length, true, [&](const Multiplicities& m) {
          ++log.sequences_tried;
          const auto& L = table.lengths(m);
          if (!std::equal(L.begin(), L.end(), task.target_lengths.begin(), task.target_lengths.end()))
            return true;
          Sequence seq(support, m);
          LengthReport report = length_set(seq, atom_set);
          if (!counts_meet(report, task)) return true;
          RealizationWitness w{g, support, std::move(seq), std::move(report)};
          revalidate(w, task, atom_set);
          result.witness = std::move(w);
          return false;
        });
      } while (!result.witness && next_combination(pick, nonzero.size()));
    }
    log.exhausted = !result.witness && log.max_support_size == nonzero.size() &&
                    (!task.max_sequence_length ||
                     *task.max_sequence_length >= task.target_lengths.front() * davenport(g));
    result.log.push_back(std::move(log));
    if (result.witness) break;
  }
  return result;
}

SurveyReport aamp_survey(const Group& g, std::size_t element_cap, std::size_t guard, unsigned threads) {
  SurveyReport report;
  report.group = g;
  report.element_cap = element_cap;
  report.delta_star = delta_star(g, element_cap, guard, threads).values;
  report.differences_tried = report.delta_star.empty() ? std::vector<std::size_t>{1} : report.delta_star;

  const Support whole = Support::whole_group(g);
  const AtomSet atom_set = atoms(whole);
  std::vector<Multiplicities> atom_mults;
  for (const auto& a : atom_set.atoms) atom_mults.push_back(a.multiplicities());
  detail::LengthTable table(std::move(atom_mults), whole.size());
  const detail::PackedArithmetic arith(g, whole.elements(), element_cap);

  std::map<std::vector<std::uint32_t>, std::size_t> seen;  // length set -> entry index
  detail::for_each_zero_sum(arith, element_cap, false, [&](const Multiplicities& m) {
    ++report.sequences_checked;
    const auto& L = table.lengths(m);
    const Sequence seq(whole, m);
    if (L.empty())
      throw Error(ErrorKind::SurveyFailure, "zero-sum sequence " + format_sequence(seq) + " has no factorization");
    std::vector<std::uint32_t> key(L.begin(), L.end());
    if (auto it = seen.find(key); it != seen.end()) return true;

    const std::vector<long> Ll(L.begin(), L.end());
    std::optional<AampWitness> best;
    for (auto d : report.differences_tried) {
      AampWitness w = minimal_aamp(Ll, static_cast<long>(d));
      if (!validate_aamp(Ll, w))
        throw Error(ErrorKind::SurveyFailure, "AAMP witness for " + format_sequence(seq) + " failed validation");
      if (!best || w.bound < best->bound) best = std::move(w);
    }
    SurveyEntry entry{{L.begin(), L.end()}, seq, best->d, best->bound};
    report.empirical_bound = std::max(report.empirical_bound, entry.bound);
    seen.emplace(std::move(key), report.entries.size());
    report.entries.push_back(std::move(entry));
    return true;
  });
  return report;
}

}  // namespace klab
