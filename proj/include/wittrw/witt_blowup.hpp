#pragma once

// Decomposition of ghost tuples along S = S(p) ⊔ p·(S/p): restriction to S(p) times
// the Frobenius F_p, and its iteration down to singleton truncation sets.

#include "wittrw/witt.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wittrw {

struct BlowupSplit {
  GhostTuple coprime;    // over S(p): components at k with p ∤ k
  GhostTuple frobenius;  // over S/p: components at kp
};

inline BlowupSplit blowup_split(const GhostTuple& g, std::int64_t p) {
  if (!is_prime(p) || !g.S().contains(p)) throw std::invalid_argument("blowup_split: p must be a prime in S");
  return {ghost_restrict(g, g.S().coprime_part(p)), ghost_frobenius(p, g)};
}

/// Inverse of blowup_split: interleaves u over S(p) and v over S/p into a tuple over S.
inline GhostTuple blowup_merge(const GhostTuple& u, const GhostTuple& v, std::int64_t p, const TruncationSet& S) {
  if (!(u.S() == S.coprime_part(p)) || !(v.S() == S.quotient(p)))
    throw std::invalid_argument("blowup_merge: index sets inconsistent with S");
  if (u.var_count() != v.var_count()) throw std::invalid_argument("blowup_merge: variable counts differ");
  std::vector<IntPoly> out;
  for (auto k : S) out.push_back(k % p == 0 ? v.at(k / p) : u.at(k));
  return GhostTuple(S, std::move(out), u.var_count());
}

/// Membership in X_S(R)[I_p / p], read through the split isomorphism onto
/// X_{S(p)}(R) × X_{S/p}(R).
inline bool localized_member(const GhostTuple& g, std::int64_t p) {
  auto [u, v] = blowup_split(g, p);
  return dwork_check(u) && dwork_check(v);
}

/// One leaf of an iterated blow-up: a ghost tuple over {1} sitting at `index` of the
/// original truncation set.
struct BlowupLeaf {
  std::int64_t index;
  IntPoly value;
};

/// Repeatedly splits along the first prime of `order` that still occurs in the current
/// truncation set, until every piece lives over {1}. When `check_integrality` is set, every
/// intermediate piece must satisfy Dwork's congruences (true whenever g is a ghost image).
inline std::vector<BlowupLeaf> iterated_blowup(const GhostTuple& g, const std::vector<std::int64_t>& order,
                                               bool check_integrality = false) {
  std::vector<BlowupLeaf> leaves;
  // (piece, scale): piece component at k is the original component at k * scale.
  std::vector<std::pair<GhostTuple, std::int64_t>> work{{g, 1}};
  while (!work.empty()) {
    auto [piece, scale] = std::move(work.back());
    work.pop_back();
    if (check_integrality && !dwork_check(piece))
      throw NotIntegral(scale);
    if (piece.S().size() == 1) {
      leaves.push_back({scale, piece.comps()[0]});
      continue;
    }
    std::int64_t p = 0;
    for (auto q : order)
      if (piece.S().contains(q)) {
        p = q;
        break;
      }
    if (p == 0) throw std::invalid_argument("iterated_blowup: prime order misses a prime of S");
    auto [u, v] = blowup_split(piece, p);
    work.emplace_back(std::move(v), scale * p);
    work.emplace_back(std::move(u), scale);
  }
  std::sort(leaves.begin(), leaves.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  return leaves;
}

/// delta_p(m) = p if p | m, else 1.
inline std::int64_t delta_p(std::int64_t m, std::int64_t p) { return m % p == 0 ? p : 1; }

/// Right-hand side of the generator product rule
///   V_m<r> V_n<s> = [lcm(m,n) in S] * gcd(m,n) * V_lcm(m,n)<r^{n/c} s^{m/c}>,  c = gcd(m,n).
inline GhostTuple generator_product_rule(std::int64_t m, const IntPoly& r, std::int64_t n, const IntPoly& s,
                                         const TruncationSet& S) {
  const std::int64_t c = gcd(m, n), L = lcm(m, n);
  if (!S.contains(L)) return GhostTuple::zero(S, r.var_count());
  IntPoly arg = r.pow(static_cast<std::uint64_t>(n / c)) * s.pow(static_cast<std::uint64_t>(m / c));
  return BigInt(c) * ghost_generator(L, arg, S);
}

/// V_m<r>/delta_p(m), exact on the ghost side.
inline GhostTuple localized_generator(std::int64_t m, const IntPoly& r, std::int64_t p, const TruncationSet& S) {
  GhostTuple g = ghost_generator(m, r, S);
  std::vector<IntPoly> out;
  for (const auto& c : g.comps()) out.push_back(exact_div(c, BigInt(delta_p(m, p))));
  return GhostTuple(S, std::move(out), r.var_count());
}

/// Localized product rule:
///   (V_m<r>/δ_p(m)) (V_n<s>/δ_p(n)) = [L in S] * c/δ_p(c) * V_L<r^{n/c} s^{m/c}>/δ_p(L).
inline GhostTuple localized_product_rule(std::int64_t m, const IntPoly& r, std::int64_t n, const IntPoly& s,
                                         std::int64_t p, const TruncationSet& S) {
  const std::int64_t c = gcd(m, n), L = lcm(m, n);
  if (!S.contains(L)) return GhostTuple::zero(S, r.var_count());
  IntPoly arg = r.pow(static_cast<std::uint64_t>(n / c)) * s.pow(static_cast<std::uint64_t>(m / c));
  return BigInt(c / delta_p(c, p)) * localized_generator(L, arg, p, S);
}

}  // namespace wittrw
