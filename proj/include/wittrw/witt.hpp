#pragma once

#include "wittrw/int_poly.hpp"
#include "wittrw/truncation_set.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wittrw {

/// Ghost-to-Witt inversion failed: the division by n at index n left a remainder.
class NotIntegral : public std::runtime_error {
public:
  explicit NotIntegral(std::int64_t index)
      : std::runtime_error("NotIntegral(" + std::to_string(index) + ")"), index_(index) {}
  std::int64_t index() const { return index_; }

private:
  std::int64_t index_;
};

/// An element of R^S: one polynomial per n in S, no membership guarantee.
class GhostTuple {
public:
  GhostTuple() = default;

  GhostTuple(TruncationSet S, std::vector<IntPoly> comps, std::size_t var_count)
      : S_(std::move(S)), comps_(std::move(comps)), vars_(var_count) {
    if (comps_.size() != S_.size()) throw std::invalid_argument("ghost tuple length differs from |S|");
    for (const auto& c : comps_)
      if (c.var_count() != vars_) throw std::invalid_argument("ghost component over wrong variable count");
  }

  static GhostTuple zero(const TruncationSet& S, std::size_t var_count) {
    return GhostTuple(S, std::vector<IntPoly>(S.size(), IntPoly(var_count)), var_count);
  }

  /// (c, c, ..., c)
  static GhostTuple constant(const TruncationSet& S, const IntPoly& c) {
    return GhostTuple(S, std::vector<IntPoly>(S.size(), c), c.var_count());
  }

  const TruncationSet& S() const { return S_; }
  std::size_t var_count() const { return vars_; }
  const std::vector<IntPoly>& comps() const { return comps_; }

  /// Component at n in S.
  const IntPoly& at(std::int64_t n) const { return comps_[S_.at(n)]; }
  IntPoly& at(std::int64_t n) { return comps_[S_.at(n)]; }

  bool is_zero() const {
    for (const auto& c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }

  GhostTuple& operator+=(const GhostTuple& o) {
    check(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  GhostTuple& operator-=(const GhostTuple& o) {
    check(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
  }
  GhostTuple& operator*=(const GhostTuple& o) {
    check(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] *= o.comps_[i];
    return *this;
  }
  friend GhostTuple operator+(GhostTuple a, const GhostTuple& b) { return a += b; }
  friend GhostTuple operator-(GhostTuple a, const GhostTuple& b) { return a -= b; }
  friend GhostTuple operator*(GhostTuple a, const GhostTuple& b) { return a *= b; }
  friend GhostTuple operator*(const BigInt& c, GhostTuple a) {
    for (auto& x : a.comps_) x *= c;
    return a;
  }
  friend bool operator==(const GhostTuple&, const GhostTuple&) = default;

private:
  void check(const GhostTuple& o) const {
    if (!(o.S_ == S_) || o.vars_ != vars_)
      throw std::invalid_argument("ghost tuples over different S or variable count");
  }

  TruncationSet S_;
  std::vector<IntPoly> comps_;
  std::size_t vars_ = 0;
};

/// gh_n((r_k)) = sum_{k | n} k * r_k^{n/k}, for every n in S.
inline GhostTuple ghost_map(const TruncationSet& S, const std::vector<IntPoly>& witt,
                            std::size_t var_count) {
  if (witt.size() != S.size()) throw std::invalid_argument("Witt coordinate count differs from |S|");
  std::vector<IntPoly> out;
  out.reserve(S.size());
  for (auto n : S) {
    IntPoly g(var_count);
    for (std::size_t i = 0; i < S.size(); ++i) {
      auto k = S.elems()[i];
      if (n % k != 0 || witt[i].is_zero()) continue;
      g += witt[i].pow(static_cast<std::uint64_t>(n / k)) * BigInt(k);
    }
    out.push_back(std::move(g));
  }
  return GhostTuple(S, std::move(out), var_count);
}

/// Recovers Witt coordinates from a ghost tuple, divisors in increasing order.
/// On failure returns nothing and stores the first failing index in *failed_at.
inline std::optional<std::vector<IntPoly>> try_witt_coordinates(const GhostTuple& g,
                                                                std::int64_t* failed_at = nullptr) {
  const auto& S = g.S();
  std::vector<IntPoly> r;
  r.reserve(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    auto n = S.elems()[i];
    IntPoly rest = g.comps()[i];
    for (std::size_t j = 0; j < i; ++j) {
      auto k = S.elems()[j];
      if (n % k != 0 || r[j].is_zero()) continue;
      rest -= r[j].pow(static_cast<std::uint64_t>(n / k)) * BigInt(k);
    }
    try {
      r.push_back(exact_div(rest, BigInt(n)));
    } catch (const NotDivisible&) {
      if (failed_at) *failed_at = n;
      return std::nullopt;
    }
  }
  return r;
}

/// Element of W_S(Z[x1..xt]): the ghost tuple together with its Witt coordinates.
class WittVector {
public:
  WittVector() = default;

  /// From Witt coordinates (r_n)_{n in S}.
  static WittVector from_witt(const TruncationSet& S, std::vector<IntPoly> witt, std::size_t var_count) {
    for (const auto& w : witt)
      if (w.var_count() != var_count) throw std::invalid_argument("Witt coordinate over wrong variable count");
    GhostTuple g = ghost_map(S, witt, var_count);
    return WittVector(std::move(g), std::move(witt));
  }

  /// From a ghost tuple; throws NotIntegral if it is not in the image of the ghost map.
  static WittVector from_ghost(GhostTuple g) {
    std::int64_t bad = 0;
    auto r = try_witt_coordinates(g, &bad);
    if (!r) throw NotIntegral(bad);
    return WittVector(std::move(g), std::move(*r));
  }

  static std::optional<WittVector> try_from_ghost(GhostTuple g, std::int64_t* failed_at = nullptr) {
    auto r = try_witt_coordinates(g, failed_at);
    if (!r) return std::nullopt;
    return WittVector(std::move(g), std::move(*r));
  }

  static WittVector zero(const TruncationSet& S, std::size_t var_count) {
    return WittVector(GhostTuple::zero(S, var_count), std::vector<IntPoly>(S.size(), IntPoly(var_count)));
  }

  const TruncationSet& S() const { return ghost_.S(); }
  std::size_t var_count() const { return ghost_.var_count(); }
  const GhostTuple& ghost() const { return ghost_; }
  const std::vector<IntPoly>& witt() const { return witt_; }
  const IntPoly& witt_at(std::int64_t n) const { return witt_[S().at(n)]; }

  friend bool operator==(const WittVector& a, const WittVector& b) { return a.ghost_ == b.ghost_; }

private:
  WittVector(GhostTuple g, std::vector<IntPoly> w) : ghost_(std::move(g)), witt_(std::move(w)) {}

  GhostTuple ghost_;
  std::vector<IntPoly> witt_;
};

inline WittVector ghost_of_witt(const TruncationSet& S, std::vector<IntPoly> witt, std::size_t var_count) {
  return WittVector::from_witt(S, std::move(witt), var_count);
}

inline WittVector witt_of_ghost(const GhostTuple& g) { return WittVector::from_ghost(g); }

inline WittVector witt_add(const WittVector& a, const WittVector& b) {
  return WittVector::from_ghost(a.ghost() + b.ghost());
}
inline WittVector witt_sub(const WittVector& a, const WittVector& b) {
  return WittVector::from_ghost(a.ghost() - b.ghost());
}
inline WittVector witt_mul(const WittVector& a, const WittVector& b) {
  return WittVector::from_ghost(a.ghost() * b.ghost());
}
inline WittVector witt_scale(const BigInt& c, const WittVector& a) {
  return WittVector::from_ghost(c * a.ghost());
}

inline WittVector operator+(const WittVector& a, const WittVector& b) { return witt_add(a, b); }
inline WittVector operator-(const WittVector& a, const WittVector& b) { return witt_sub(a, b); }
inline WittVector operator*(const WittVector& a, const WittVector& b) { return witt_mul(a, b); }
inline WittVector operator*(const BigInt& c, const WittVector& a) { return witt_scale(c, a); }

/// [r] = (r, 0, 0, ...), ghost (r^n)_n.
inline WittVector teichmuller(const IntPoly& r, const TruncationSet& S) {
  std::vector<IntPoly> w(S.size(), IntPoly(r.var_count()));
  if (!S.empty()) w[0] = r;
  return WittVector::from_witt(S, std::move(w), r.var_count());
}

// Ghost-side operators; all are plain index manipulations.

/// gh_k(F_n a) = gh_{kn}(a), k in S/n.
inline GhostTuple ghost_frobenius(std::int64_t n, const GhostTuple& g) {
  if (!g.S().contains(n)) throw std::invalid_argument("Frobenius index not in S");
  TruncationSet T = g.S().quotient(n);
  std::vector<IntPoly> out;
  for (auto k : T) out.push_back(g.at(k * n));
  return GhostTuple(T, std::move(out), g.var_count());
}

/// gh_k(V_n a) = n * gh_{k/n}(a) when n | k, else 0. `g` lives over S/n.
inline GhostTuple ghost_verschiebung(std::int64_t n, const GhostTuple& g, const TruncationSet& S) {
  if (!S.contains(n)) throw std::invalid_argument("Verschiebung index not in S");
  if (!(g.S() == S.quotient(n))) throw std::invalid_argument("Verschiebung argument must live over S/n");
  std::vector<IntPoly> out;
  for (auto k : S) out.push_back(k % n == 0 ? g.at(k / n) * BigInt(n) : IntPoly(g.var_count()));
  return GhostTuple(S, std::move(out), g.var_count());
}

inline GhostTuple ghost_restrict(const GhostTuple& g, const TruncationSet& T) {
  if (!T.is_subset_of(g.S())) throw std::invalid_argument("restriction target not a subset of S");
  std::vector<IntPoly> out;
  for (auto k : T) out.push_back(g.at(k));
  return GhostTuple(T, std::move(out), g.var_count());
}

/// V_n<r> = gh(V_n[r]) = (n * [n | k] * r^{k/n})_{k in S}.
inline GhostTuple ghost_generator(std::int64_t n, const IntPoly& r, const TruncationSet& S) {
  if (!S.contains(n)) throw std::invalid_argument("generator index not in S");
  std::vector<IntPoly> out;
  for (auto k : S)
    out.push_back(k % n == 0 ? r.pow(static_cast<std::uint64_t>(k / n)) * BigInt(n) : IntPoly(r.var_count()));
  return GhostTuple(S, std::move(out), r.var_count());
}

inline WittVector verschiebung(std::int64_t n, const WittVector& a, const TruncationSet& S) {
  GhostTuple g = ghost_verschiebung(n, a.ghost(), S);
  std::vector<IntPoly> w;
  for (auto k : S) w.push_back(k % n == 0 ? a.witt_at(k / n) : IntPoly(a.var_count()));
  auto v = WittVector::from_witt(S, std::move(w), a.var_count());
  if (!(v.ghost() == g)) throw std::logic_error("Verschiebung ghost/Witt mismatch");
  return v;
}

inline WittVector frobenius(std::int64_t n, const WittVector& a) {
  return WittVector::from_ghost(ghost_frobenius(n, a.ghost()));
}

inline WittVector restrict_to(const WittVector& a, const TruncationSet& T) {
  if (!T.is_subset_of(a.S())) throw std::invalid_argument("restriction target not a subset of S");
  std::vector<IntPoly> w;
  for (auto k : T) w.push_back(a.witt_at(k));
  return WittVector::from_witt(T, std::move(w), a.var_count());
}

/// The unique Witt vector with ghost tuple (z, ..., z).
inline WittVector constant_witt(const BigInt& z, const TruncationSet& S, std::size_t var_count = 0) {
  return WittVector::from_ghost(GhostTuple::constant(S, IntPoly::constant(var_count, z)));
}

/// Dwork's congruences with the Frobenius lifts x_i -> x_i^p: for every prime p in S and
/// every n in p*(S/p), phi_p(g_{n/p}) - g_n is divisible by p^{ord_p(n)}.
inline bool dwork_check(const GhostTuple& g) {
  for (auto p : g.S().primes())
    for (auto n : g.S()) {
      if (n % p != 0) continue;
      IntPoly diff = frobenius_lift_poly(g.at(n / p), p) - g.at(n);
      if (!diff.divisible_by(pow(BigInt(p), static_cast<std::uint64_t>(ord_p(n, p))))) return false;
    }
  return true;
}

/// mu_n = sum_{m in n*S/n} mobius(m/n) * (sigma/m) * V_m[1], with ghost sigma * e_n.
inline WittVector mu_element(std::int64_t n, const TruncationSet& S, std::size_t var_count = 0) {
  if (!S.contains(n)) throw std::invalid_argument("mu_element index not in S");
  const std::int64_t sigma = S.sigma();
  const IntPoly one = IntPoly::constant(var_count, 1);
  WittVector acc = WittVector::zero(S, var_count);
  for (auto m : S) {
    if (m % n != 0) continue;
    int mu = mobius(m / n);
    if (mu == 0) continue;
    WittVector vm = verschiebung(m, teichmuller(one, S.quotient(m)), S);
    acc = acc + BigInt(mu * (sigma / m)) * vm;
  }
  return acc;
}

/// Membership in the minimal prime ker(gh_n).
inline bool in_kernel_gh_n(const WittVector& a, std::int64_t n) { return a.ghost().at(n).is_zero(); }

/// Membership in I_p = ker(W_S(R) -> W_{S(p)}(R) / p W_{S(p)}(R)).
inline bool ip_member(const WittVector& a, std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("ip_member: p must be prime");
  if (!a.S().contains(p)) throw std::invalid_argument("ip_member: p must lie in S");
  WittVector r = restrict_to(a, a.S().coprime_part(p));
  for (const auto& c : r.witt())
    if (!c.divisible_by(p)) return false;
  return true;
}

}  // namespace wittrw
