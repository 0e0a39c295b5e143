#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace klab::oracle {

namespace {

Integer det_by_expansion(const std::vector<std::vector<Integer>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c] == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    const Integer term = a[0][c] * det_by_expansion(minor);
    total += (c % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

void combinations(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> c(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      f(c);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      c[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<Integer> invariant_factors_by_minors(const IntMatrix& m) {
  std::vector<Integer> g{Integer(1)};
  const std::size_t kmax = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    Integer gk = 0;
    combinations(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
      combinations(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
        std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m(rows[i], cols[j]);
        const Integer d = det_by_expansion(sub);
        mpz_gcd(gk.get_mpz_t(), gk.get_mpz_t(), d.get_mpz_t());
      });
    });
    if (gk == 0) break;
    g.push_back(gk);
  }
  std::vector<Integer> out;
  for (std::size_t k = 1; k < g.size(); ++k) out.push_back(g[k] / g[k - 1]);
  return out;
}

std::vector<Multiplicities> all_vectors(std::size_t items, std::size_t max_len) {
  std::vector<Multiplicities> out;
  Multiplicities cur(items, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i == items) {
      out.push_back(cur);
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      cur[i] = static_cast<std::uint32_t>(v);
      rec(i + 1, left - v);
    }
    cur[i] = 0;
  };
  rec(0, max_len);
  return out;
}

std::vector<Multiplicities> sub_vectors(const Multiplicities& of) {
  std::vector<Multiplicities> out;
  Multiplicities cur(of.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == of.size()) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t v = 0; v <= of[i]; ++v) {
      cur[i] = v;
      rec(i + 1);
    }
    cur[i] = 0;
  };
  rec(0);
  return out;
}

GroupElement slow_sum(const Support& s, const Multiplicities& m) {
  const Group& g = s.group();
  GroupElement total = zero_element(g);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::uint32_t c = 0; c < m[i]; ++c) total = element_add(g, total, s.elements()[i]);
  return total;
}

bool slow_is_atom(const Support& s, const Multiplicities& m) {
  const GroupElement zero = zero_element(s.group());
  const auto total = std::accumulate(m.begin(), m.end(), std::size_t{0});
  if (total == 0 || !(slow_sum(s, m) == zero)) return false;
  for (const auto& sub : sub_vectors(m)) {
    const auto len = std::accumulate(sub.begin(), sub.end(), std::size_t{0});
    if (len == 0 || len == total) continue;
    if (slow_sum(s, sub) == zero) return false;
  }
  return true;
}

std::set<Multiplicities> slow_atoms(const Support& s, std::size_t max_len) {
  std::set<Multiplicities> out;
  for (const auto& v : all_vectors(s.size(), max_len))
    if (slow_is_atom(s, v)) out.insert(v);
  return out;
}

std::set<std::multiset<Multiplicities>> slow_factorizations(const Multiplicities& target,
                                                             const std::set<Multiplicities>& atoms) {
  std::set<std::multiset<Multiplicities>> out;
  std::vector<Multiplicities> chosen;
  std::function<void(const Multiplicities&)> rec = [&](const Multiplicities& rest) {
    if (std::all_of(rest.begin(), rest.end(), [](std::uint32_t v) { return v == 0; })) {
      out.insert(std::multiset<Multiplicities>(chosen.begin(), chosen.end()));
      return;
    }
    for (const auto& a : atoms) {
      bool fits = true;
      for (std::size_t i = 0; i < rest.size() && fits; ++i) fits = a[i] <= rest[i];
      if (!fits) continue;
      Multiplicities next = rest;
      for (std::size_t i = 0; i < rest.size(); ++i) next[i] -= a[i];
      chosen.push_back(a);
      rec(next);
      chosen.pop_back();
    }
  };
  rec(target);
  return out;
}

std::set<std::size_t> slow_lengths(const Multiplicities& target, const std::set<Multiplicities>& atoms) {
  std::set<std::size_t> out;
  for (const auto& f : slow_factorizations(target, atoms)) out.insert(f.size());
  return out;
}

bool slow_is_aamp(const std::vector<long>& L_in, long d, long bound) {
  const std::set<long> L(L_in.begin(), L_in.end());
  const long lo = *L.begin(), hi = *L.rbegin();
  auto mod = [](long a, long m) { return ((a % m) + m) % m; };
  // D = {0, d} plus any subset of [1, d-1].
  for (long mask = 0; mask < (1L << (d - 1)); ++mask) {
    std::set<long> D{0, d};
    for (long i = 1; i < d; ++i)
      if (mask >> (i - 1) & 1) D.insert(i);
    auto in_prog = [&](long t) {
      for (long delta : D)
        if (mod(t - delta, d) == 0) return true;
      return false;
    };
    for (long y = lo - bound - d; y <= hi; ++y) {
      for (long top = 0; y + top <= hi; ++top) {
        std::set<long> Lp, Ls, Ldp;
        bool ok = true;
        for (long l : L) {
          const long t = l - y;
          if (!in_prog(t)) ok = false;
          if (t < 0) Lp.insert(t);
          else if (t <= top) Ls.insert(t);
          else Ldp.insert(t);
        }
        if (!ok) continue;
        if (Ls.empty() || *Ls.begin() != 0 || *Ls.rbegin() != top) continue;
        std::set<long> expected;
        for (long t = 0; t <= top; ++t)
          if (in_prog(t)) expected.insert(t);
        if (expected != Ls) continue;
        if (!Lp.empty() && *Lp.begin() < -bound) continue;
        if (!Ldp.empty() && *Ldp.rbegin() > top + bound) continue;
        return true;
      }
    }
  }
  return false;
}

namespace {

void partitions(std::uint32_t n, std::uint32_t max_part, std::size_t max_parts, std::vector<std::uint32_t>& cur,
                std::vector<std::vector<std::uint32_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  if (cur.size() == max_parts) return;
  for (std::uint32_t part = std::min(n, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions(n - part, part, max_parts, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::map<LabeledPrime, std::uint32_t>> labeled_products(const KrullPresentation& p,
                                                                    std::size_t max_primes) {
  const Support classes(p.class_group(), [&] {
    std::vector<GroupElement> xs;
    for (const auto& c : p.classes()) xs.push_back(c.element);
    return xs;
  }());
  std::vector<std::map<LabeledPrime, std::uint32_t>> out;
  for (const auto& v : all_vectors(classes.size(), max_primes)) {
    if (!(slow_sum(classes, v) == zero_element(p.class_group()))) continue;
    std::vector<std::vector<std::vector<std::uint32_t>>> options(v.size());
    bool feasible = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      // Order matches classes().
      const auto& count = p.classes()[i].count;
      const std::size_t limit = count.is_omega() ? max_primes : count.value();
      std::vector<std::uint32_t> cur;
      partitions(v[i], v[i], limit, cur, options[i]);
      if (options[i].empty()) feasible = false;
    }
    if (!feasible) continue;
    std::map<LabeledPrime, std::uint32_t> current;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == v.size()) {
        out.push_back(current);
        return;
      }
      for (const auto& parts : options[i]) {
        for (std::size_t j = 0; j < parts.size(); ++j) current[{i, j}] = parts[j];
        rec(i + 1);
        for (std::size_t j = 0; j < parts.size(); ++j) current.erase({i, j});
      }
    };
    rec(0);
  }
  return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim, long lo, long hi) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<long> entry(lo, hi);
  IntMatrix m(dim(rng), dim(rng));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = entry(rng);
  return m;
}

Group random_small_group(std::mt19937_64& rng, long max_order) {
  // Random factor lists whose product stays within max_order.
  for (;;) {
    std::vector<Integer> t;
    long order = 1;
    std::uniform_int_distribution<int> count(0, 3);
    std::uniform_int_distribution<long> factor(2, 6);
    for (int i = count(rng); i > 0; --i) {
      const long f = factor(rng);
      if (order * f > max_order) continue;
      order *= f;
      t.emplace_back(f);
    }
    return group_from_spec(0, t);
  }
}

GroupElement random_element(std::mt19937_64& rng, const Group& g, long free_range) {
  std::vector<Integer> f, t;
  std::uniform_int_distribution<long> fr(-free_range, free_range);
  for (std::size_t i = 0; i < g.free_rank(); ++i) f.emplace_back(fr(rng));
  for (const auto& d : g.invariant_factors()) {
    std::uniform_int_distribution<long> td(0, d.get_si() - 1);
    t.emplace_back(td(rng));
  }
  return make_element(g, f, t);
}

}  // namespace klab::oracle
