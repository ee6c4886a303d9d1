#pragma once

// Seeded random inputs for property tests and the `axioms` fuzzer.

#include "wittrw/gen_expr.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace wittrw::sampling {

using Rng = std::mt19937_64;

struct PolyShape {
  std::size_t vars = 1;
  unsigned max_degree = 3;
  std::int64_t max_coeff = 9;
  unsigned max_terms = 4;
};

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline IntPoly random_poly(Rng& rng, const PolyShape& shape) {
  IntPoly f(shape.vars);
  const auto terms = uniform(rng, 0, shape.max_terms);
  for (std::int64_t i = 0; i < terms; ++i) {
    Exponent e(shape.vars, 0);
    auto budget = uniform(rng, 0, shape.max_degree);
    for (std::size_t v = 0; v < shape.vars && budget > 0; ++v) {
      auto take = v + 1 == shape.vars ? budget : uniform(rng, 0, budget);
      e[v] = static_cast<std::uint32_t>(take);
      budget -= take;
    }
    f.add_term(e, BigInt(uniform(rng, -shape.max_coeff, shape.max_coeff)));
  }
  return f;
}

inline IntPoly random_nonzero_poly(Rng& rng, const PolyShape& shape) {
  for (;;) {
    auto f = random_poly(rng, shape);
    if (!f.is_zero()) return f;
  }
}

inline DiffForm random_form(Rng& rng, std::size_t q, const PolyShape& shape) {
  DiffForm w(q, shape.vars);
  for (const auto& J : index_tuples(shape.vars, q)) w.add(J, random_poly(rng, shape));
  return w;
}

inline std::int64_t random_element(Rng& rng, const TruncationSet& S) {
  return S.elems()[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(S.size()) - 1))];
}

inline WittVector random_witt(Rng& rng, const TruncationSet& S, const PolyShape& shape) {
  std::vector<IntPoly> w;
  for (std::size_t i = 0; i < S.size(); ++i) w.push_back(random_poly(rng, shape));
  return WittVector::from_witt(S, std::move(w), shape.vars);
}

inline GhostTuple random_ghost(Rng& rng, const TruncationSet& S, const PolyShape& shape) {
  std::vector<IntPoly> g;
  for (std::size_t i = 0; i < S.size(); ++i) g.push_back(random_poly(rng, shape));
  return GhostTuple(S, std::move(g), shape.vars);
}

/// c * V_{n_0}<r_0> 𝕕V_{n_1}<r_1> ... 𝕕V_{n_q}<r_q> with n_i drawn from S.
inline GenProduct random_product(Rng& rng, std::size_t q, const TruncationSet& S, const PolyShape& shape) {
  GenProduct p;
  p.coeff = BigInt(uniform(rng, 1, 3));
  p.factors.push_back({random_element(rng, S), random_poly(rng, shape), false});
  for (std::size_t i = 0; i < q; ++i) p.factors.push_back({random_element(rng, S), random_poly(rng, shape), true});
  return p;
}

/// A sum of one to `max_terms` random generator products, all of degree q.
inline GenExpr random_genexpr(Rng& rng, std::size_t q, const TruncationSet& S, const PolyShape& shape,
                              unsigned max_terms = 2) {
  GenExpr e{q, S, shape.vars, {}};
  const auto k = uniform(rng, 1, max_terms);
  for (std::int64_t i = 0; i < k; ++i) e.terms.emplace_back(random_product(rng, q, S, shape));
  return e;
}

inline DrwForm random_certified(Rng& rng, std::size_t q, const TruncationSet& S, const PolyShape& shape,
                                unsigned max_terms = 2) {
  return evaluate(random_genexpr(rng, q, S, shape, max_terms));
}

}  // namespace wittrw::sampling
