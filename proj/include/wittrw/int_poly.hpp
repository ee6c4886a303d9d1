#pragma once

#include "wittrw/bigint.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wittrw {

using Exponent = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

/// Graded-lexicographic order: total degree first, then lexicographic with x1 most significant.
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const {
    auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

/// Sparse polynomial in Z[x1..xt] with arbitrary-precision coefficients.
/// Zero coefficients are never stored.
class IntPoly {
public:
  using Terms = std::map<Exponent, BigInt, GradedLex>;

  IntPoly() = default;
  explicit IntPoly(std::size_t var_count) : vars_(var_count) {}
  IntPoly(std::size_t var_count, const BigInt& c) : vars_(var_count) {
    if (c != 0) terms_.emplace(Exponent(var_count, 0), c);
  }

  static IntPoly constant(std::size_t var_count, const BigInt& c) { return IntPoly(var_count, c); }

  /// The variable x_{i+1} (0-based index i).
  static IntPoly var(std::size_t var_count, std::size_t i) {
    if (i >= var_count) throw std::out_of_range("variable index out of range");
    Exponent e(var_count, 0);
    e[i] = 1;
    return monomial(e, 1);
  }

  static IntPoly monomial(const Exponent& e, const BigInt& c) {
    IntPoly p(e.size());
    if (c != 0) p.terms_.emplace(e, c);
    return p;
  }

  std::size_t var_count() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Coefficient of x^e (zero if absent).
  BigInt coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  /// Largest total degree of a stored monomial, -1 for the zero polynomial.
  std::int64_t degree() const {
    if (terms_.empty()) return -1;
    return static_cast<std::int64_t>(total_degree(terms_.rbegin()->first));
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  /// Adds c*x^e in place.
  void add_term(const Exponent& e, const BigInt& c) {
    if (e.size() != vars_) throw std::invalid_argument("exponent length does not match var_count");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  IntPoly& operator+=(const IntPoly& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  IntPoly& operator-=(const IntPoly& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  IntPoly& operator*=(const BigInt& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator-(IntPoly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend IntPoly operator*(IntPoly a, const BigInt& c) { return a *= c; }
  friend IntPoly operator*(const BigInt& c, IntPoly a) { return a *= c; }

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    a.check_vars(b);
    IntPoly r(a.vars_);
    Exponent e(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.vars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }

  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  IntPoly pow(std::uint64_t e) const {
    IntPoly result = constant(vars_, 1);
    IntPoly base = *this;
    while (e) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// Partial derivative with respect to x_{i+1}.
  IntPoly derivative(std::size_t i) const {
    IntPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent f = e;
      f[i] -= 1;
      r.add_term(f, c * e[i]);
    }
    return r;
  }

  /// Homogeneous component of total degree d.
  IntPoly homogeneous_part(std::uint64_t d) const {
    IntPoly r(vars_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == d) r.terms_.emplace(e, c);
    return r;
  }

  /// True when every coefficient is a multiple of n.
  bool divisible_by(const BigInt& n) const {
    for (const auto& [e, c] : terms_)
      if (!divides(n, c)) return false;
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      BigInt a = c < 0 ? BigInt(-c) : c;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(i + 1);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) os << a;
      else if (a == 1) os << mono;
      else os << a << "*" << mono;
    }
    return os.str();
  }

private:
  void check_vars(const IntPoly& o) const {
    if (o.vars_ != vars_) throw std::invalid_argument("polynomials over different variable counts");
  }

  std::size_t vars_ = 0;
  Terms terms_;
};

/// g with n*g = f; throws NotDivisible when some coefficient is not a multiple of n.
inline IntPoly exact_div(const IntPoly& f, const BigInt& n) {
  if (n == 0) throw std::invalid_argument("exact_div by zero");
  IntPoly g(f.var_count());
  for (const auto& [e, c] : f.terms()) {
    BigInt q, r;
    boost::multiprecision::divide_qr(c, n, q, r);
    if (r != 0) throw NotDivisible("coefficient " + c.str() + " not divisible by " + n.str());
    g.add_term(e, q);
  }
  return g;
}

/// Standard Frobenius lift x_i -> x_i^p, identity on coefficients.
inline IntPoly frobenius_lift_poly(const IntPoly& f, std::int64_t p) {
  IntPoly g(f.var_count());
  for (const auto& [e, c] : f.terms()) {
    Exponent h = e;
    for (auto& v : h) v *= static_cast<std::uint32_t>(p);
    g.add_term(h, c);
  }
  return g;
}

/// Coefficientwise reduction into [0, n).
inline IntPoly reduce_mod(const IntPoly& f, const BigInt& n) {
  IntPoly g(f.var_count());
  for (const auto& [e, c] : f.terms()) g.add_term(e, mod_floor(c, n));
  return g;
}

/// Polynomial with coefficients in Z/p^m, kept as residues in [0, p^m).
class ModPoly {
public:
  ModPoly(const IntPoly& f, const BigInt& modulus)
      : modulus_(modulus), poly_(reduce_mod(f, modulus)) {
    if (modulus < 2) throw std::invalid_argument("ModPoly modulus must be at least 2");
  }

  const BigInt& modulus() const { return modulus_; }
  const IntPoly& lift() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }

  friend ModPoly operator+(const ModPoly& a, const ModPoly& b) {
    a.check(b);
    return ModPoly(a.poly_ + b.poly_, a.modulus_);
  }
  friend ModPoly operator-(const ModPoly& a, const ModPoly& b) {
    a.check(b);
    return ModPoly(a.poly_ - b.poly_, a.modulus_);
  }
  friend ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    a.check(b);
    return ModPoly(a.poly_ * b.poly_, a.modulus_);
  }
  friend bool operator==(const ModPoly&, const ModPoly&) = default;

private:
  void check(const ModPoly& o) const {
    if (o.modulus_ != modulus_) throw std::invalid_argument("ModPoly moduli differ");
  }

  BigInt modulus_;
  IntPoly poly_;
};

}  // namespace wittrw
