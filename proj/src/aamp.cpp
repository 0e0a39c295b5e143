#include <algorithm>
#include <set>

#include "klab/lengths.hpp"

namespace klab {

namespace {

long floor_mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<long> normalized(std::vector<long> L) {
  std::sort(L.begin(), L.end());
  L.erase(std::unique(L.begin(), L.end()), L.end());
  return L;
}

void check_arguments(const std::vector<long>& L, long d) {
  if (d <= 0) throw Error(ErrorKind::InvalidInput, "AAMP difference must be positive");
  if (L.empty()) throw Error(ErrorKind::InvalidInput, "AAMP check needs a nonempty set");
}

// Shift y and the top of L* fix the split; the residue set is forced to be
// exactly the residues of L - y, since every extra residue only adds
// elements L* would have to contain.
struct Candidate {
  long y;
  long top;  // max L*
  long bound;
};

std::optional<Candidate> best_candidate(const std::vector<long>& L, long d, std::optional<long> limit) {
  std::optional<Candidate> best;
  const long lo = L.front(), hi = L.back();
  const std::set<long> members(L.begin(), L.end());
  for (long y : L) {
    const long left = y - lo;
    if (limit && left > *limit) break;
    std::vector<bool> residues(static_cast<std::size_t>(d), false);
    for (long l : L) residues[static_cast<std::size_t>(floor_mod(l - y, d))] = true;

    // L* = [0, top] must agree with the residue pattern; walk top upward
    // while that stays true.
    for (long t = 0; y + t <= hi; ++t) {
      const bool in_L = members.contains(y + t);
      const bool in_progression = residues[static_cast<std::size_t>(floor_mod(t, d))];
      if (in_L != in_progression) break;
      if (!in_L) continue;
      const long need = std::max(left, hi - y - t);
      if (limit && need > *limit) continue;
      if (!best || need < best->bound) best = Candidate{y, t, need};
    }
  }
  return best;
}

AampWitness build_witness(const std::vector<long>& L, long d, const Candidate& c, long bound) {
  AampWitness w;
  w.d = static_cast<std::size_t>(d);
  w.bound = static_cast<std::size_t>(bound);
  w.y = c.y;
  std::set<long> D{d};
  for (long l : L) {
    const long rel = l - c.y;
    D.insert(floor_mod(rel, d));
    if (rel < 0) w.L_prime.push_back(rel);
    else if (rel <= c.top) w.L_star.push_back(rel);
    else w.L_dprime.push_back(rel);
  }
  w.D_set.assign(D.begin(), D.end());
  return w;
}

}  // namespace

std::optional<AampWitness> aamp_check(const std::vector<long>& L_in, long d, long bound) {
  check_arguments(L_in, d);
  if (bound < 0) throw Error(ErrorKind::InvalidInput, "AAMP bound must be non-negative");
  const auto L = normalized(L_in);
  const auto c = best_candidate(L, d, bound);
  if (!c) return std::nullopt;
  AampWitness w = build_witness(L, d, *c, bound);
  if (!validate_aamp(L, w)) throw Error(ErrorKind::InvalidInput, "internal: AAMP witness failed validation");
  return w;
}

AampWitness minimal_aamp(const std::vector<long>& L_in, long d) {
  check_arguments(L_in, d);
  const auto L = normalized(L_in);
  const auto c = best_candidate(L, d, std::nullopt);
  // y = min L with L* = {0} always qualifies, so a candidate exists.
  AampWitness w = build_witness(L, d, *c, c->bound);
  if (!validate_aamp(L, w)) throw Error(ErrorKind::InvalidInput, "internal: AAMP witness failed validation");
  return w;
}

bool validate_aamp(const std::vector<long>& L_in, const AampWitness& w) {
  if (w.d == 0) return false;
  const long d = static_cast<long>(w.d);
  const long M = static_cast<long>(w.bound);
  const std::set<long> D(w.D_set.begin(), w.D_set.end());
  if (!D.contains(0) || !D.contains(d)) return false;
  if (*D.begin() < 0 || *D.rbegin() > d) return false;

  auto in_progression = [&](long t) {
    return std::any_of(D.begin(), D.end(), [&](long delta) { return floor_mod(t - delta, d) == 0; });
  };

  if (w.L_star.empty() || *std::min_element(w.L_star.begin(), w.L_star.end()) != 0) return false;
  const long top = *std::max_element(w.L_star.begin(), w.L_star.end());
  std::set<long> expected_star;
  for (long t = 0; t <= top; ++t)
    if (in_progression(t)) expected_star.insert(t);
  if (std::set<long>(w.L_star.begin(), w.L_star.end()) != expected_star) return false;

  for (long t : w.L_prime)
    if (t < -M || t > -1) return false;
  for (long t : w.L_dprime)
    if (t < top + 1 || t > top + M) return false;

  std::set<long> rebuilt;
  for (const auto* part : {&w.L_prime, &w.L_star, &w.L_dprime})
    for (long t : *part) rebuilt.insert(w.y + t);
  if (rebuilt != std::set<long>(L_in.begin(), L_in.end())) return false;
  for (long l : rebuilt)
    if (!in_progression(l - w.y)) return false;
  return true;
}

}  // namespace klab
