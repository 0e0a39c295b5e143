#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "klab/lengths.hpp"
#include "klab/zerosum.hpp"
#include "oracles.hpp"

using namespace klab;

namespace {

Support support_of(const Group& g, std::initializer_list<long> torsion_values) {
  std::vector<GroupElement> xs;
  for (long v : torsion_values) xs.push_back(make_element(g, {}, {Integer(v)}));
  return Support(g, xs);
}

std::set<Multiplicities> vectors_of(const AtomSet& a) {
  std::set<Multiplicities> out;
  for (const auto& s : a.atoms) out.insert(s.multiplicities());
  return out;
}

}  // namespace

TEST(Sigma, Examples) {
  const Group c3 = group_from_spec(0, {3});
  const Support s = support_of(c3, {1, 2});
  EXPECT_EQ(sigma(Sequence(s, {3, 0})), zero_element(c3));
  EXPECT_EQ(sigma(Sequence(s)), zero_element(c3));
  const Group z = group_from_spec(1, {});
  const Support zs = parse_support(z, "[2,3,-5]");
  EXPECT_EQ(sigma(Sequence(zs, {1, 1, 1})), zero_element(z));
}

TEST(Sigma, IsHomomorphism) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const Group g = oracle::random_small_group(rng, 24);
    const Support s = Support::whole_group(g);
    std::uniform_int_distribution<std::uint32_t> m(0, 3);
    Multiplicities a(s.size()), b(s.size());
    for (auto& v : a) v = m(rng);
    for (auto& v : b) v = m(rng);
    const Sequence sa(s, a), sb(s, b);
    ASSERT_EQ(sigma(sa.concat(sb)), element_add(g, sigma(sa), sigma(sb)));
    ASSERT_EQ(sigma(sa), oracle::slow_sum(s, a));
  }
}

TEST(ZeroSum, Examples) {
  const Group c3 = group_from_spec(0, {3});
  const Support s = support_of(c3, {1, 2});
  EXPECT_TRUE(is_zero_sum(Sequence(s, {1, 1})));
  EXPECT_FALSE(is_zero_sum(Sequence(s, {2, 0})));
  EXPECT_TRUE(is_zero_sum(Sequence(s)));
  EXPECT_FALSE(has_proper_zero_subsequence(Sequence(s, {3, 0})));
  EXPECT_TRUE(has_proper_zero_subsequence(Sequence(s, {3, 3})));
  const Group c2 = group_from_spec(0, {2});
  EXPECT_FALSE(has_proper_zero_subsequence(Sequence(support_of(c2, {1}), {2})));
  EXPECT_THROW(has_proper_zero_subsequence(Sequence(s, {1, 0})), Error);
  EXPECT_THROW(has_proper_zero_subsequence(Sequence(s)), Error);
}

TEST(ZeroSum, ProperSubsequenceMatchesOracle) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 300; ++i) {
    const Group g = oracle::random_small_group(rng, 8);
    const Support s = Support::whole_group(g);
    std::uniform_int_distribution<std::uint32_t> m(0, 2);
    Multiplicities v(s.size());
    for (auto& x : v) x = m(rng);
    const Sequence seq(s, v);
    if (seq.empty()) continue;
    ASSERT_EQ(is_atom(seq), oracle::slow_is_atom(s, v)) << format_sequence(seq);
  }
}

TEST(Atoms, Examples) {
  const Group c3 = group_from_spec(0, {3});
  const AtomSet a = atoms(support_of(c3, {1, 2}));
  EXPECT_TRUE(a.complete);
  EXPECT_EQ(vectors_of(a), (std::set<Multiplicities>{{3, 0}, {0, 3}, {1, 1}}));

  const AtomSet t = atoms(Support::whole_group(Group{}));
  EXPECT_TRUE(t.complete);
  ASSERT_EQ(t.atoms.size(), 1u);
  EXPECT_EQ(t.atoms[0].length(), 1u);

  const Group v4 = group_from_spec(0, {2, 2});
  const Support nz = parse_support(v4, "[(0,1),(1,0),(1,1)]");
  const AtomSet k = atoms(nz);
  EXPECT_TRUE(k.complete);
  EXPECT_EQ(vectors_of(k), (std::set<Multiplicities>{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 1}}));
}

TEST(Atoms, EmptySupportHasNoAtoms) {
  const AtomSet a = atoms(Support(group_from_spec(0, {4}), {}));
  EXPECT_TRUE(a.atoms.empty());
  EXPECT_TRUE(a.complete);
}

TEST(Atoms, InfiniteGroupNeedsCap) {
  const Group z = group_from_spec(1, {});
  const Support s = parse_support(z, "[-2,1,3]");
  try {
    atoms(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NeedsCap);
  }
  const AtomSet a = atoms(s, 5);
  EXPECT_FALSE(a.complete);
  EXPECT_EQ(a.cap_used, 5u);
  // k copies of -2 balanced by a ones and b threes, minimal, length <= 5.
  const std::set<Multiplicities> expected{{1, 2, 0}, {2, 1, 1}, {3, 0, 2}};
  EXPECT_EQ(vectors_of(a), expected);
}

TEST(Atoms, SortedAndCapRecorded) {
  const AtomSet a = atoms(Support::whole_group(group_from_spec(0, {6})));
  EXPECT_EQ(a.cap_used, 6u);
  for (std::size_t i = 1; i < a.atoms.size(); ++i) ASSERT_LE(a.atoms[i - 1].length(), a.atoms[i].length());
}

TEST(Atoms, Davenport) {
  EXPECT_EQ(davenport(group_from_spec(0, {3})), 3u);
  EXPECT_EQ(davenport(Group{}), 1u);
  EXPECT_EQ(davenport(group_from_spec(0, {2, 2})), 3u);
  EXPECT_EQ(davenport(group_from_spec(0, {2, 4})), 5u);
  EXPECT_EQ(davenport(group_from_spec(0, {3, 3})), 5u);
  EXPECT_EQ(davenport(group_from_spec(0, {2, 2, 2})), 4u);
  EXPECT_THROW(davenport(group_from_spec(1, {})), Error);
}

TEST(Atoms, DavenportMatchesBruteForce) {
  for (auto g : {group_from_spec(0, {2}), group_from_spec(0, {4}), group_from_spec(0, {5}),
                 group_from_spec(0, {2, 2})}) {
    std::size_t best = 0;
    for (const auto& v : oracle::slow_atoms(Support::whole_group(g), g.order()->get_ui()))
      best = std::max<std::size_t>(best, std::accumulate(v.begin(), v.end(), std::size_t{0}));
    EXPECT_EQ(davenport(g), best) << format_group(g);
  }
}

TEST(Atoms, NoAtomDividesAnother) {
  for (auto g : {group_from_spec(0, {6}), group_from_spec(0, {2, 2}), group_from_spec(0, {7}),
                 group_from_spec(0, {2, 4})}) {
    const AtomSet a = atoms(Support::whole_group(g));
    for (std::size_t i = 0; i < a.atoms.size(); ++i)
      for (std::size_t j = 0; j < a.atoms.size(); ++j)
        if (i != j) ASSERT_FALSE(a.atoms[i].divides(a.atoms[j]));
  }
}

TEST(Atoms, NegationPermutesAtoms) {
  for (long n = 2; n <= 8; ++n) {
    const Group g = group_from_spec(0, {n});
    const Support s = Support::whole_group(g);
    std::set<std::vector<std::pair<GroupElement, std::uint32_t>>> original, negated;
    for (const auto& atom : atoms(s).atoms) {
      std::vector<std::pair<GroupElement, std::uint32_t>> a, b;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (atom.multiplicity(i) == 0) continue;
        a.emplace_back(s.elements()[i], atom.multiplicity(i));
        b.emplace_back(element_neg(g, s.elements()[i]), atom.multiplicity(i));
      }
      std::sort(b.begin(), b.end());
      original.insert(a);
      negated.insert(b);
    }
    ASSERT_EQ(original, negated) << n;
  }
}

TEST(Atoms, CapAtOrderIsComplete) {
  // Groups of order <= 8, every subset of the whole group when small enough.
  for (auto g : {group_from_spec(0, {2}), group_from_spec(0, {3}), group_from_spec(0, {4}),
                 group_from_spec(0, {5}), group_from_spec(0, {6}), group_from_spec(0, {7}),
                 group_from_spec(0, {8}), group_from_spec(0, {2, 2}), group_from_spec(0, {2, 4}),
                 group_from_spec(0, {2, 2, 2})}) {
    const Support whole = Support::whole_group(g);
    const std::size_t n = g.order()->get_ui();
    for (std::uint64_t mask = 1; mask < (1ULL << whole.size()); mask += (n > 6 ? 7 : 1)) {
      const Support s = whole.subset(mask);
      ASSERT_EQ(vectors_of(atoms(s, n)), vectors_of(atoms(s, n + 3))) << format_group(g) << " " << mask;
    }
  }
}

TEST(Atoms, MatchBruteForceOracle) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 60; ++i) {
    const Group g = oracle::random_small_group(rng, 6);
    const Support whole = Support::whole_group(g);
    std::uniform_int_distribution<std::uint64_t> mask(1, (1ULL << whole.size()) - 1);
    const Support s = whole.subset(mask(rng));
    ASSERT_EQ(vectors_of(atoms(s)), oracle::slow_atoms(s, g.order()->get_ui())) << format_support(s);
  }
}

TEST(Atoms, EveryZeroSumFactors) {
  const Group g = group_from_spec(0, {2, 2});
  const Support s = Support::whole_group(g);
  const AtomSet a = atoms(s);
  for (const auto& v : oracle::all_vectors(s.size(), 7)) {
    const Sequence seq(s, v);
    if (seq.empty() || !is_zero_sum(seq)) continue;
    ASSERT_FALSE(factorizations(seq, a).empty()) << format_sequence(seq);
  }
}

TEST(Text, SequenceAndSupport) {
  const Group c3 = group_from_spec(0, {3});
  const Support s = parse_support(c3, "[2,1]");
  EXPECT_EQ(s, support_of(c3, {1, 2}));
  const Sequence seq = parse_sequence(s, "[1^3, 2^3]");
  EXPECT_EQ(seq.multiplicities(), (Multiplicities{3, 3}));
  EXPECT_EQ(format_sequence(seq), "[1^3,2^3]");
  EXPECT_EQ(format_sequence(Sequence(s)), "[]");
  EXPECT_EQ(parse_sequence(s, "[1,1,2]").multiplicities(), (Multiplicities{2, 1}));
  EXPECT_EQ(parse_support(c3, "all").size(), 3u);
  EXPECT_THROW(parse_sequence(s, "[0^2]"), Error);
  EXPECT_THROW(parse_support(c3, "[1,1]"), Error);
  EXPECT_EQ(format_support(s), "[1,2]");
}

TEST(SequenceOps, ConcatAndDivides) {
  const Group c4 = group_from_spec(0, {4});
  const Support s = Support::whole_group(c4);
  const Sequence a(s, {0, 1, 0, 1}), b(s, {1, 1, 0, 0});
  EXPECT_EQ(a.concat(b).multiplicities(), (Multiplicities{1, 2, 0, 1}));
  EXPECT_TRUE(a.divides(a.concat(b)));
  EXPECT_FALSE(a.concat(b).divides(a));
  EXPECT_EQ(Sequence::from_terms(s, {{make_element(c4, {}, {Integer(1)}), 2}, {make_element(c4, {}, {Integer(1)}), 1}})
                .multiplicities(),
            (Multiplicities{0, 3, 0, 0}));
}
