#pragma once

// Formal generator expressions for elements of X_S^q(R), and the constructive lift of a
// tuple satisfying the p-typical Dwork congruences to such an expression.

#include "wittrw/drw.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wittrw {

/// V_n<r>, or 𝕕V_n<r> when `dd` is set.
struct GenFactor {
  std::int64_t n;
  IntPoly r;
  bool dd = false;
};

/// coeff * f_1 f_2 ... f_k; the empty product is the unit.
struct GenProduct {
  BigInt coeff = 1;
  std::vector<GenFactor> factors;
};

/// V_n(a; b) = Σ_i ( V_n<a_{i,0}> 𝕕V_n<a_{i,1}> ... 𝕕V_n<a_{i,q}>  +  𝕕V_n<b_{i,1}> ... 𝕕V_n<b_{i,q}> ).
/// `a` rows have q+1 entries, `b` rows have q entries; the two lists may differ in length.
struct GenBlock {
  std::int64_t n;
  std::vector<std::vector<IntPoly>> a;
  std::vector<std::vector<IntPoly>> b;
};

using GenTerm = std::variant<GenProduct, GenBlock>;

struct GenExpr {
  std::size_t q = 0;
  TruncationSet S;
  std::size_t var_count = 0;
  std::vector<GenTerm> terms;
};

/// The lift stopped: the congruence defining level `level` (index p^level) fails.
class NotInImage : public std::runtime_error {
public:
  explicit NotInImage(int level)
      : std::runtime_error("NotInImage(level " + std::to_string(level) + ")"), level_(level) {}
  int level() const { return level_; }

private:
  int level_;
};

namespace detail {

inline DrwForm eval_factor(const GenFactor& f, const TruncationSet& S) {
  DrwForm g = drw_generator(f.n, f.r, S);
  return f.dd ? drw_dd(g) : g;
}

inline DrwForm eval_term(const GenProduct& t, const GenExpr& e) {
  DrwForm acc = drw_unit(e.S, e.var_count);
  for (const auto& f : t.factors) acc = drw_mul(acc, eval_factor(f, e.S));
  return t.coeff * acc;
}

inline DrwForm eval_term(const GenBlock& t, const GenExpr& e) {
  DrwForm acc = DrwForm::zero(e.q, e.S, e.var_count);
  for (const auto& row : t.a) {
    if (row.size() != e.q + 1) throw std::invalid_argument("block row a must have q+1 entries");
    DrwForm prod = drw_generator(t.n, row[0], e.S);
    for (std::size_t j = 1; j < row.size(); ++j) prod = drw_mul(prod, drw_dd(drw_generator(t.n, row[j], e.S)));
    acc += prod;
  }
  for (const auto& row : t.b) {
    if (row.size() != e.q) throw std::invalid_argument("block row b must have q entries");
    DrwForm prod = drw_unit(e.S, e.var_count);
    for (const auto& s : row) prod = drw_mul(prod, drw_dd(drw_generator(t.n, s, e.S)));
    acc += prod;
  }
  return acc;
}

}  // namespace detail

/// Evaluates an expression to its (certified) component tuple.
inline DrwForm evaluate(const GenExpr& e) {
  DrwForm acc = DrwForm::zero(e.q, e.S, e.var_count);
  for (const auto& t : e.terms) {
    DrwForm v = std::visit([&](const auto& term) { return detail::eval_term(term, e); }, t);
    if (v.degree() != e.q) throw std::invalid_argument("generator term of wrong degree");
    acc += v;
  }
  return acc;
}

/// ω_r^{(j)} = r_0^{p^j} Π_{i>=1} r_i^{p^j - 1} dr_1 ... dr_q.
inline DiffForm omega_power(const std::vector<IntPoly>& r, std::int64_t p, unsigned j) {
  const auto pj = static_cast<std::uint64_t>(ipow(p, j));
  IntPoly coeff = r[0].pow(pj);
  DiffForm form(IntPoly::constant(coeff.var_count(), 1));
  for (std::size_t i = 1; i < r.size(); ++i) {
    coeff *= r[i].pow(pj - 1);
    form = wedge(form, differential(DiffForm(r[i])));
  }
  return coeff * form;
}

/// Same with a leading 1: Π s_i^{p^j - 1} ds_1 ... ds_q.
inline DiffForm omega_power_unit(const std::vector<IntPoly>& s, std::int64_t p, unsigned j, std::size_t var_count) {
  std::vector<IntPoly> r{IntPoly::constant(var_count, 1)};
  r.insert(r.end(), s.begin(), s.end());
  return omega_power(r, p, j);
}

/// Lifts a tuple over S = {1, p, ..., p^n} to a generator expression whose evaluation is
/// exactly the tuple. Throws NotInImage(k) if φ_p(ω_{p^{k-1}}) - ω_{p^k} ∉ p^kΩ + dΩ.
///
/// Level m contributes the block V_{p^m}(a_m; b_m), whose component at p^k (k >= m) is
/// p^m ω_{a}^{(k-m)} + ω_{(1,b)}^{(k-m)}. Level 0 is read off from ω_1 monomial by
/// monomial; level k solves ω_{p^k} - (levels < k at p^k) = p^k α + dg and takes a_k from
/// the monomials of α and b_k = (h_K, x_{K}) from g = Σ h_K dx_K.
inline GenExpr drw_lift(const DrwForm& raw, std::int64_t p) {
  const auto& S = raw.S();
  auto tp = S.typical_prime();
  if (S.size() > 1 && (!tp || *tp != p)) throw std::invalid_argument("drw_lift: S must be {1, p, ..., p^n}");
  const std::size_t q = raw.degree(), t = raw.var_count();
  GenExpr expr{q, S, t, {}};

  if (q == 0) {
    std::int64_t bad = 0;
    auto w = try_witt_coordinates(raw.to_ghost(), &bad);
    if (!w) throw NotInImage(ord_p(bad, p));
    for (std::size_t i = 0; i < S.size(); ++i)
      if (!(*w)[i].is_zero()) expr.terms.push_back(GenProduct{1, {GenFactor{S.elems()[i], (*w)[i], false}}});
    return expr;
  }

  auto elementary_rows = [&](const DiffForm& w) {
    std::vector<std::vector<IntPoly>> rows;
    for (const auto& term : monomial_decompose(w)) {
      std::vector<IntPoly> row{term.coefficient_poly()};
      for (auto j : term.indices) row.push_back(IntPoly::var(t, j));
      rows.push_back(std::move(row));
    }
    return rows;
  };

  std::vector<GenBlock> blocks;
  blocks.push_back({1, elementary_rows(raw.at(1)), {}});

  std::int64_t pk = 1;
  for (unsigned k = 1; k < S.size(); ++k) {
    pk *= p;
    DiffForm residual = raw.at(pk);
    for (unsigned m = 0; m < blocks.size(); ++m) {
      const BigInt pm = pow(BigInt(p), m);
      for (const auto& row : blocks[m].a) residual -= pm * omega_power(row, p, k - m);
      for (const auto& row : blocks[m].b) residual -= omega_power_unit(row, p, k - m, t);
    }
    auto g = exactness_mod(residual, p, k);
    if (!g) throw NotInImage(static_cast<int>(k));
    DiffForm alpha = exact_div(residual - differential(*g), pow(BigInt(p), k));
    GenBlock block{pk, elementary_rows(alpha), {}};
    for (const auto& [K, h] : g->comps()) {
      std::vector<IntPoly> row{h};
      for (auto j : K) row.push_back(IntPoly::var(t, j));
      block.b.push_back(std::move(row));
    }
    blocks.push_back(std::move(block));
  }

  for (auto& b : blocks)
    if (!b.a.empty() || !b.b.empty()) expr.terms.emplace_back(std::move(b));
  if (!(evaluate(expr) == raw)) throw std::logic_error("drw_lift: evaluation does not reproduce the input");
  return expr;
}

/// Lift and certify: the evaluation of drw_lift(raw, p), which equals raw with certified set.
inline DrwForm drw_certify(const DrwForm& raw, std::int64_t p) { return evaluate(drw_lift(raw, p)); }

}  // namespace wittrw
