#pragma once

// The ghost-side de Rham-Witt complex X_S^q(R) ⊂ (Ω^q_{R/Z})^S for R = Z[x1..xt].
//
// Components are kept in the normalized convention where the differential is
// 𝕕 = (d/k)_{k in S}; in this convention every element of the complex has integral
// components, Frobenius is a pure index shift and Verschiebung multiplies by n. The
// plain componentwise-d convention differs by the factor k^q at index k
// (see convention_rescale).

#include "wittrw/forms.hpp"
#include "wittrw/linalg_modpk.hpp"
#include "wittrw/witt.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wittrw {

/// 𝕕 of a raw tuple left a non-integral component at `index`.
class NotInComplex : public std::runtime_error {
public:
  explicit NotInComplex(std::int64_t index)
      : std::runtime_error("NotInComplex(" + std::to_string(index) + ")"), index_(index) {}
  std::int64_t index() const { return index_; }

private:
  std::int64_t index_;
};

/// An S-indexed tuple of q-forms. `certified` records that the tuple was built from
/// generators V_n<r> by the complex operations (or by a successful lift), i.e. that it lies
/// in X_S^q(R). Raw tuples from outside carry certified = false.
class DrwForm {
public:
  DrwForm() = default;

  DrwForm(std::size_t q, TruncationSet S, std::vector<DiffForm> comps, std::size_t var_count,
          bool certified = false)
      : q_(q), S_(std::move(S)), comps_(std::move(comps)), vars_(var_count), certified_(certified) {
    if (comps_.size() != S_.size()) throw std::invalid_argument("form tuple length differs from |S|");
    for (const auto& w : comps_)
      if (w.degree() != q_ || w.var_count() != vars_)
        throw std::invalid_argument("form tuple component of wrong degree or variable count");
  }

  static DrwForm zero(std::size_t q, const TruncationSet& S, std::size_t var_count) {
    return DrwForm(q, S, std::vector<DiffForm>(S.size(), DiffForm(q, var_count)), var_count, true);
  }

  /// Degree-0 form from a ghost tuple; certified when `certified` is passed (e.g. from a WittVector).
  static DrwForm from_ghost(const GhostTuple& g, bool certified) {
    std::vector<DiffForm> c(g.comps().begin(), g.comps().end());
    return DrwForm(0, g.S(), std::move(c), g.var_count(), certified);
  }

  std::size_t degree() const { return q_; }
  const TruncationSet& S() const { return S_; }
  std::size_t var_count() const { return vars_; }
  const std::vector<DiffForm>& comps() const { return comps_; }
  bool certified() const { return certified_; }
  const DiffForm& at(std::int64_t k) const { return comps_[S_.at(k)]; }

  bool is_zero() const {
    for (const auto& w : comps_)
      if (!w.is_zero()) return false;
    return true;
  }

  GhostTuple to_ghost() const {
    if (q_ != 0) throw std::logic_error("to_ghost on a form of positive degree");
    std::vector<IntPoly> g;
    for (const auto& w : comps_) g.push_back(w.as_poly());
    return GhostTuple(S_, std::move(g), vars_);
  }

  /// Drops the provenance bit, e.g. to feed a tuple to a membership test.
  DrwForm as_raw() const {
    DrwForm r = *this;
    r.certified_ = false;
    return r;
  }

  DrwForm& operator+=(const DrwForm& o) {
    check(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    certified_ = certified_ && o.certified_;
    return *this;
  }
  DrwForm& operator-=(const DrwForm& o) {
    check(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    certified_ = certified_ && o.certified_;
    return *this;
  }
  friend DrwForm operator+(DrwForm a, const DrwForm& b) { return a += b; }
  friend DrwForm operator-(DrwForm a, const DrwForm& b) { return a -= b; }
  friend DrwForm operator*(const BigInt& c, DrwForm a) {
    for (auto& w : a.comps_) w = c * w;
    return a;
  }

  /// Equality of component tuples; provenance is not compared.
  friend bool operator==(const DrwForm& a, const DrwForm& b) {
    return a.q_ == b.q_ && a.S_ == b.S_ && a.vars_ == b.vars_ && a.comps_ == b.comps_;
  }

private:
  void check(const DrwForm& o) const {
    if (o.q_ != q_ || !(o.S_ == S_) || o.vars_ != vars_)
      throw std::invalid_argument("forms over different degree, S or variable count");
  }

  std::size_t q_ = 0;
  TruncationSet S_;
  std::vector<DiffForm> comps_;
  std::size_t vars_ = 0;
  bool certified_ = false;
};

/// V_n<r> = (n [n|k] r^{k/n})_{k in S}, certified.
inline DrwForm drw_generator(std::int64_t n, const IntPoly& r, const TruncationSet& S) {
  return DrwForm::from_ghost(ghost_generator(n, r, S), true);
}

inline DrwForm drw_unit(const TruncationSet& S, std::size_t var_count) {
  return drw_generator(1, IntPoly::constant(var_count, 1), S);
}

/// 𝕕ω: component k is d(ω_k)/k. Throws NotInComplex(k) if that division is not exact.
inline DrwForm drw_dd(const DrwForm& w) {
  std::vector<DiffForm> out;
  for (std::size_t i = 0; i < w.S().size(); ++i) {
    auto k = w.S().elems()[i];
    try {
      out.push_back(exact_div(differential(w.comps()[i]), BigInt(k)));
    } catch (const NotDivisible&) {
      throw NotInComplex(k);
    }
  }
  return DrwForm(w.degree() + 1, w.S(), std::move(out), w.var_count(), w.certified());
}

/// Componentwise wedge product.
inline DrwForm drw_mul(const DrwForm& a, const DrwForm& b) {
  if (!(a.S() == b.S()) || a.var_count() != b.var_count())
    throw std::invalid_argument("drw_mul: forms over different S or variable count");
  std::vector<DiffForm> out;
  for (std::size_t i = 0; i < a.S().size(); ++i) out.push_back(wedge(a.comps()[i], b.comps()[i]));
  return DrwForm(a.degree() + b.degree(), a.S(), std::move(out), a.var_count(), a.certified() && b.certified());
}

inline DrwForm drw_pow(const DrwForm& a, unsigned e) {
  DrwForm r = drw_unit(a.S(), a.var_count());
  for (unsigned i = 0; i < e; ++i) r = drw_mul(r, a);
  return r;
}

/// F_n: component k of the result is ω_{kn}, over S/n.
inline DrwForm drw_frobenius(std::int64_t n, const DrwForm& w) {
  if (!w.S().contains(n)) throw std::invalid_argument("drw_frobenius: n not in S");
  TruncationSet T = w.S().quotient(n);
  std::vector<DiffForm> out;
  for (auto k : T) out.push_back(w.at(k * n));
  return DrwForm(w.degree(), T, std::move(out), w.var_count(), w.certified());
}

/// V_n: ω over S/n ↦ (n [n|k] ω_{k/n})_{k in S}.
inline DrwForm drw_verschiebung(std::int64_t n, const DrwForm& w, const TruncationSet& S) {
  if (!S.contains(n)) throw std::invalid_argument("drw_verschiebung: n not in S");
  if (!(w.S() == S.quotient(n))) throw std::invalid_argument("drw_verschiebung: argument must live over S/n");
  std::vector<DiffForm> out;
  for (auto k : S) out.push_back(k % n == 0 ? BigInt(n) * w.at(k / n) : DiffForm(w.degree(), w.var_count()));
  return DrwForm(w.degree(), S, std::move(out), w.var_count(), w.certified());
}

inline DrwForm drw_restrict(const DrwForm& w, const TruncationSet& T) {
  if (!T.is_subset_of(w.S())) throw std::invalid_argument("drw_restrict: target not a subset of S");
  std::vector<DiffForm> out;
  for (auto k : T) out.push_back(w.at(k));
  return DrwForm(w.degree(), T, std::move(out), w.var_count(), w.certified());
}

enum class Convention { ToPlainD, ToNormalized };

/// Multiplies (ToPlainD) or divides (ToNormalized) component k by k^q.
/// Division throws NotDivisible on tuples that are not rescaled normalized tuples.
inline std::vector<DiffForm> convention_rescale(const std::vector<DiffForm>& comps, const TruncationSet& S,
                                                std::size_t q, Convention dir) {
  if (comps.size() != S.size()) throw std::invalid_argument("convention_rescale: tuple length differs from |S|");
  std::vector<DiffForm> out;
  for (std::size_t i = 0; i < S.size(); ++i) {
    BigInt f = pow(BigInt(S.elems()[i]), q);
    out.push_back(dir == Convention::ToPlainD ? f * comps[i] : exact_div(comps[i], f));
  }
  return out;
}

/// φ_p(f dx_J) = p^{-q} φ_p(f) d(x_{j1}^p) ∧ ... ∧ d(x_{jq}^p), with φ_p(x_i) = x_i^p.
inline DiffForm phi_form(const DiffForm& w, std::int64_t p) {
  const std::size_t t = w.var_count();
  const BigInt scale = pow(BigInt(p), w.degree());
  DiffForm out(w.degree(), t);
  for (const auto& [J, f] : w.comps()) {
    DiffForm term(frobenius_lift_poly(f, p));
    for (auto j : J) term = wedge(term, differential(DiffForm(IntPoly::var(t, j).pow(static_cast<std::uint64_t>(p)))));
    out += exact_div(term, scale);
  }
  return out;
}

/// φ_p(ω_{p^k}) - ω_{p^{k+1}} for S = {1, p, ..., p^n}.
inline DiffForm dwork_defect(const DrwForm& w, std::int64_t p, std::int64_t k_index) {
  return phi_form(w.at(k_index), p) - w.at(k_index * p);
}

/// For p-typical S = {1, p, ..., p^n}: φ_p(ω_{p^k}) - ω_{p^{k+1}} ∈ p^{k+1}Ω^q + dΩ^{q-1}
/// for every 0 <= k < n. This characterizes membership in X_S^q(R).
inline bool drw_dwork_check(const DrwForm& w, std::int64_t p) {
  auto tp = w.S().typical_prime();
  if (w.S().size() > 1 && (!tp || *tp != p))
    throw std::invalid_argument("drw_dwork_check: S must be {1, p, ..., p^n}");
  unsigned level = 1;
  for (auto k : w.S()) {
    if (!w.S().contains(k * p)) break;
    if (!in_pk_plus_exact(dwork_defect(w, p, k), p, level)) return false;
    ++level;
  }
  return true;
}

/// Necessary congruences for any element of X_S^q(R):
/// φ_p(ω_k) - ω_{kp} ∈ p^{ord_p(k)+1}Ω^q + dΩ^{q-1} for all k in S/p.
inline bool drw_multi_check(const DrwForm& w, std::int64_t p) {
  if (!is_prime(p) || !w.S().contains(p)) throw std::invalid_argument("drw_multi_check: p must be a prime in S");
  for (auto k : w.S().quotient(p))
    if (!in_pk_plus_exact(dwork_defect(w, p, k), p, static_cast<unsigned>(ord_p(k, p) + 1))) return false;
  return true;
}

/// σ^{q+1} (δ_{k=m} f_{m,J})_{k in S}, σ = lcm(S), where f_{m,J} is the dx_J coefficient of ω_m.
inline WittVector dual_functional(const DrwForm& w, std::int64_t m, const IndexTuple& J) {
  if (!w.S().contains(m)) throw std::invalid_argument("dual_functional: m not in S");
  if (J.size() != w.degree()) throw std::invalid_argument("dual_functional: index tuple length differs from q");
  const BigInt scale = pow(BigInt(w.S().sigma()), w.degree() + 1);
  GhostTuple g = GhostTuple::zero(w.S(), w.var_count());
  g.at(m) = w.at(m).coeff(J) * scale;
  return WittVector::from_ghost(std::move(g));
}

/// The same functional as a Möbius sum Σ_{k in S, m|k} μ(k/m) (σ^{q+1}/k) V_k[f^{k/m}],
/// evaluated through Witt vector arithmetic.
inline WittVector dual_functional_mobius(const DrwForm& w, std::int64_t m, const IndexTuple& J) {
  if (!w.S().contains(m)) throw std::invalid_argument("dual_functional: m not in S");
  const BigInt scale = pow(BigInt(w.S().sigma()), w.degree() + 1);
  const IntPoly f = w.at(m).coeff(J);
  WittVector acc = WittVector::zero(w.S(), w.var_count());
  for (auto k : w.S()) {
    if (k % m != 0) continue;
    int mu = mobius(k / m);
    if (mu == 0) continue;
    WittVector vk = verschiebung(k, teichmuller(f.pow(static_cast<std::uint64_t>(k / m)), w.S().quotient(k)), w.S());
    acc = acc + BigInt(mu) * (scale / k) * vk;
  }
  return acc;
}

}  // namespace wittrw
