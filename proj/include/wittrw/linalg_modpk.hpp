#pragma once

// Linear systems over Z/p^m and over Z, and the membership test
// omega ∈ p^m Ω^q + dΩ^{q-1} for polynomial forms.

#include "wittrw/forms.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wittrw {

namespace detail {

struct BigBezout {
  BigInt g, s, t;
};

inline BigBezout big_xgcd(const BigInt& a, const BigInt& b) {
  BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline BigInt inverse_mod(const BigInt& a, const BigInt& n) {
  auto [g, s, t] = big_xgcd(mod_floor(a, n), n);
  if (g != 1) throw std::invalid_argument("inverse_mod: not a unit");
  return mod_floor(s, n);
}

/// Monomials of total degree e in t variables.
inline std::vector<Exponent> monomials_of_degree(std::size_t t, std::uint32_t e) {
  std::vector<Exponent> out;
  if (t == 0) {
    if (e == 0) out.emplace_back();
    return out;
  }
  Exponent cur(t, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i + 1 == t) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (std::uint32_t v = 0; v <= left; ++v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, e);
  return out;
}

}  // namespace detail

/// Dense matrix over Z/p^m with entries reduced into [0, p^m).
class ModMatrix {
public:
  ModMatrix(std::int64_t p, unsigned m, std::size_t rows, std::size_t cols)
      : p_(p), m_(m), modulus_(pow(BigInt(p), m)), rows_(rows), cols_(cols), a_(rows * cols) {
    if (!is_prime(p) || m == 0) throw std::invalid_argument("ModMatrix modulus must be p^m with p prime, m >= 1");
  }

  std::int64_t prime() const { return p_; }
  unsigned exponent() const { return m_; }
  const BigInt& modulus() const { return modulus_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const BigInt& v) { a_[i * cols_ + j] = mod_floor(v, modulus_); }

  /// p-adic valuation of a residue, m for zero.
  unsigned valuation(BigInt v) const {
    v = mod_floor(v, modulus_);
    if (v == 0) return m_;
    unsigned k = 0;
    while (v % p_ == 0) {
      v /= p_;
      ++k;
    }
    return k;
  }

  std::vector<BigInt> apply(const std::vector<BigInt>& x) const {
    std::vector<BigInt> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      BigInt s = 0;
      for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
      y[i] = mod_floor(s, modulus_);
    }
    return y;
  }

private:
  std::int64_t p_;
  unsigned m_;
  BigInt modulus_;
  std::size_t rows_, cols_;
  std::vector<BigInt> a_;
};

/// Some x with A x = b over Z/p^m, or nothing when the system has no solution.
///
/// Reduces A to diagonal form by unimodular row and column operations, always pivoting on
/// an entry of least p-adic valuation; every other entry of the pivot row and column is
/// then a multiple of the pivot, so elimination never needs to divide by a zero divisor.
inline std::optional<std::vector<BigInt>> solve_mod(const ModMatrix& A, std::vector<BigInt> b) {
  if (b.size() != A.rows()) throw std::invalid_argument("solve_mod: right-hand side length mismatch");
  const BigInt& N = A.modulus();
  const std::size_t R = A.rows(), C = A.cols();
  std::vector<std::vector<BigInt>> M(R, std::vector<BigInt>(C));
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) M[i][j] = A(i, j);
  for (auto& v : b) v = mod_floor(v, N);
  // x = Q y, Q accumulates the column operations.
  std::vector<std::vector<BigInt>> Q(C, std::vector<BigInt>(C, 0));
  for (std::size_t j = 0; j < C; ++j) Q[j][j] = 1;
  const BigInt p = A.prime();

  std::vector<unsigned> pivot_val;
  std::size_t r = 0;
  for (; r < std::min(R, C); ++r) {
    unsigned best = A.exponent();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = r; i < R && best > 0; ++i)
      for (std::size_t j = r; j < C; ++j) {
        if (M[i][j] == 0) continue;
        unsigned v = A.valuation(M[i][j]);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (best == A.exponent()) break;
    std::swap(M[r], M[bi]);
    std::swap(b[r], b[bi]);
    if (bj != r) {
      for (auto& row : M) std::swap(row[r], row[bj]);
      for (auto& row : Q) std::swap(row[r], row[bj]);
    }
    const BigInt pv = pow(p, best);
    const BigInt unit_inv = detail::inverse_mod(M[r][r] / pv, N);
    for (std::size_t j = r; j < C; ++j) M[r][j] = mod_floor(M[r][j] * unit_inv, N);
    b[r] = mod_floor(b[r] * unit_inv, N);
    for (std::size_t i = r + 1; i < R; ++i) {
      if (M[i][r] == 0) continue;
      const BigInt c = M[i][r] / pv;
      for (std::size_t j = r; j < C; ++j) M[i][j] = mod_floor(M[i][j] - c * M[r][j], N);
      b[i] = mod_floor(b[i] - c * b[r], N);
    }
    for (std::size_t j = r + 1; j < C; ++j) {
      if (M[r][j] == 0) continue;
      const BigInt c = M[r][j] / pv;
      M[r][j] = 0;
      for (std::size_t k = 0; k < C; ++k) Q[k][j] = mod_floor(Q[k][j] - c * Q[k][r], N);
    }
    pivot_val.push_back(best);
  }

  std::vector<BigInt> y(C, 0);
  for (std::size_t k = 0; k < r; ++k) {
    const BigInt pv = pow(p, pivot_val[k]);
    if (b[k] % pv != 0) return std::nullopt;
    y[k] = b[k] / pv;
  }
  for (std::size_t k = r; k < R; ++k)
    if (b[k] != 0) return std::nullopt;

  std::vector<BigInt> x(C, 0);
  for (std::size_t i = 0; i < C; ++i) {
    BigInt s = 0;
    for (std::size_t k = 0; k < C; ++k) s += Q[i][k] * y[k];
    x[i] = mod_floor(s, N);
  }
  return x;
}

/// Some integer x with A x = b exactly, or nothing. Column-style Hermite reduction with
/// extended-gcd column operations.
inline std::optional<std::vector<BigInt>> solve_integer(std::vector<std::vector<BigInt>> M, const std::vector<BigInt>& b) {
  const std::size_t R = M.size(), C = R ? M[0].size() : 0;
  if (b.size() != R) throw std::invalid_argument("solve_integer: right-hand side length mismatch");
  std::vector<std::vector<BigInt>> Q(C, std::vector<BigInt>(C, 0));
  for (std::size_t j = 0; j < C; ++j) Q[j][j] = 1;

  auto combine = [&](std::size_t c, std::size_t j, const BigInt& s, const BigInt& t, const BigInt& u,
                     const BigInt& v) {
    // new col_c = s col_c + t col_j ; new col_j = u col_c + v col_j
    for (auto* mat : {&M, &Q})
      for (auto& row : *mat) {
        BigInt a = row[c], bb = row[j];
        row[c] = s * a + t * bb;
        row[j] = u * a + v * bb;
      }
  };

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t c = 0;
  for (std::size_t i = 0; i < R && c < C; ++i) {
    for (std::size_t j = c + 1; j < C; ++j) {
      if (M[i][j] == 0) continue;
      if (M[i][c] == 0) {
        for (auto* mat : {&M, &Q})
          for (auto& row : *mat) std::swap(row[c], row[j]);
        continue;
      }
      auto [g, s, t] = detail::big_xgcd(M[i][c], M[i][j]);
      BigInt u = -M[i][j] / g, v = M[i][c] / g;
      combine(c, j, s, t, u, v);
    }
    if (M[i][c] != 0) pivots.emplace_back(i, c++);
  }

  std::vector<BigInt> y(C, 0);
  std::size_t next = 0;
  for (std::size_t i = 0; i < R; ++i) {
    BigInt rest = b[i];
    std::size_t limit = (next < pivots.size() && pivots[next].first == i) ? pivots[next].second : c;
    for (std::size_t j = 0; j < limit; ++j) rest -= M[i][j] * y[j];
    if (next < pivots.size() && pivots[next].first == i) {
      const BigInt& d = M[i][limit];
      if (rest % d != 0) return std::nullopt;
      y[limit] = rest / d;
      ++next;
    } else if (rest != 0) {
      return std::nullopt;
    }
  }
  std::vector<BigInt> x(C, 0);
  for (std::size_t i = 0; i < C; ++i)
    for (std::size_t k = 0; k < C; ++k) x[i] += Q[i][k] * y[k];
  return x;
}

namespace detail {

/// The linear map g ↦ dg restricted to (q-1)-forms whose coefficients are homogeneous of
/// degree e+1, landing in q-forms with coefficients of degree e.
struct ExactnessSystem {
  std::vector<std::pair<Exponent, IndexTuple>> unknowns;  // x^a dx_K
  std::map<std::pair<Exponent, IndexTuple>, std::size_t> equation_index;
  std::vector<std::vector<BigInt>> matrix;

  ExactnessSystem(std::size_t t, std::size_t q, std::uint32_t e) {
    for (const auto& b : monomials_of_degree(t, e))
      for (const auto& J : index_tuples(t, q)) equation_index.emplace(std::pair{b, J}, equation_index.size());
    for (const auto& a : monomials_of_degree(t, e + 1))
      for (const auto& K : index_tuples(t, q - 1)) unknowns.emplace_back(a, K);
    matrix.assign(equation_index.size(), std::vector<BigInt>(unknowns.size(), 0));
    for (std::size_t col = 0; col < unknowns.size(); ++col) {
      const auto& [a, K] = unknowns[col];
      DiffForm dg = differential(DiffForm::elementary(IntPoly::monomial(a, 1), K));
      for (const auto& [J, f] : dg.comps())
        for (const auto& [bexp, c] : f.terms()) matrix[equation_index.at({bexp, J})][col] = c;
    }
  }

  std::vector<BigInt> rhs(const DiffForm& w, std::uint32_t e) const {
    std::vector<BigInt> out(equation_index.size(), 0);
    for (const auto& [J, f] : w.comps())
      for (const auto& [bexp, c] : f.terms())
        if (total_degree(bexp) == e) out[equation_index.at({bexp, J})] = c;
    return out;
  }

  void accumulate(DiffForm& g, const std::vector<BigInt>& x) const {
    for (std::size_t col = 0; col < unknowns.size(); ++col)
      if (x[col] != 0) g.add(unknowns[col].second, IntPoly::monomial(unknowns[col].first, x[col]));
  }
};

inline std::vector<std::uint32_t> coefficient_degrees(const DiffForm& w) {
  std::vector<std::uint32_t> out;
  for (const auto& [J, f] : w.comps())
    for (const auto& [e, c] : f.terms()) out.push_back(static_cast<std::uint32_t>(total_degree(e)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// A (q-1)-form g, coefficients in [0, p^m), with dg ≡ omega (mod p^m); nothing if none exists.
///
/// d maps coefficients of degree e+1 onto coefficients of degree e, so each homogeneous
/// part of omega is solved on its own with antiderivative monomials of degree e+1. Parts
/// of a solution in any other degree satisfy dg ≡ 0 and can be dropped, which makes the
/// search over degree ≤ D+1 (D = max coefficient degree of omega) complete.
inline std::optional<DiffForm> exactness_mod(const DiffForm& omega, std::int64_t p, unsigned m) {
  if (omega.degree() == 0) throw std::invalid_argument("exactness_mod needs a form of degree >= 1");
  if (!is_prime(p) || m == 0) throw std::invalid_argument("exactness_mod needs p prime and m >= 1");
  const std::size_t t = omega.var_count(), q = omega.degree();
  const BigInt N = pow(BigInt(p), m);
  const DiffForm w = reduce_mod(omega, N);
  DiffForm g(q - 1, t);
  for (auto e : detail::coefficient_degrees(w)) {
    detail::ExactnessSystem sys(t, q, e);
    ModMatrix A(p, m, sys.matrix.size(), sys.unknowns.size());
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) A.set(i, j, sys.matrix[i][j]);
    auto x = solve_mod(A, sys.rhs(w, e));
    if (!x) return std::nullopt;
    sys.accumulate(g, *x);
  }
  return g;
}

/// An integral (q-1)-form g with dg = omega exactly, or nothing.
inline std::optional<DiffForm> exact_antiderivative(const DiffForm& omega) {
  if (omega.degree() == 0) throw std::invalid_argument("exact_antiderivative needs a form of degree >= 1");
  const std::size_t t = omega.var_count(), q = omega.degree();
  DiffForm g(q - 1, t);
  for (auto e : detail::coefficient_degrees(omega)) {
    detail::ExactnessSystem sys(t, q, e);
    auto x = solve_integer(sys.matrix, sys.rhs(omega, e));
    if (!x) return std::nullopt;
    sys.accumulate(g, *x);
  }
  return g;
}

/// omega ∈ p^k Ω^q + dΩ^{q-1}; for q = 0 this is divisibility by p^k.
inline bool in_pk_plus_exact(const DiffForm& omega, std::int64_t p, unsigned k) {
  if (k == 0) return true;
  if (omega.degree() == 0) return omega.divisible_by(pow(BigInt(p), k));
  return exactness_mod(omega, p, k).has_value();
}

}  // namespace wittrw
