#pragma once

#include "wittrw/int_poly.hpp"

#include <cstdint>
#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wittrw {

/// Strictly increasing list of 0-based variable indices; {0, 2} is dx1 dx3.
using IndexTuple = std::vector<std::size_t>;

/// Sign of dx_a ∧ dx_b when normalized to increasing order, 0 if they share an index.
inline int wedge_sign(const IndexTuple& a, const IndexTuple& b) {
  int inversions = 0;
  for (auto i : a)
    for (auto j : b) {
      if (i == j) return 0;
      if (i > j) ++inversions;
    }
  return inversions % 2 ? -1 : 1;
}

inline IndexTuple merge_indices(const IndexTuple& a, const IndexTuple& b) {
  IndexTuple out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// All increasing tuples of length q drawn from {0..t-1}, lexicographic.
inline std::vector<IndexTuple> index_tuples(std::size_t t, std::size_t q) {
  std::vector<IndexTuple> out;
  if (q > t) return out;
  IndexTuple cur(q);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == q) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (q - pos) <= t; ++i) {
      cur[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

/// One monomial summand c * x^a dx_J of a form.
struct ElementaryTerm {
  BigInt coeff;
  Exponent exponent;
  IndexTuple indices;

  IntPoly coefficient_poly() const { return IntPoly::monomial(exponent, coeff); }
  friend bool operator==(const ElementaryTerm&, const ElementaryTerm&) = default;
};

/// A q-form over Z[x1..xt], stored on increasing index tuples only.
class DiffForm {
public:
  using Comps = std::map<IndexTuple, IntPoly>;

  DiffForm() = default;
  DiffForm(std::size_t q, std::size_t var_count) : q_(q), vars_(var_count) {}

  // Degree-0 forms are polynomials.
  DiffForm(const IntPoly& f) : q_(0), vars_(f.var_count()) {  // NOLINT(google-explicit-constructor)
    if (!f.is_zero()) comps_.emplace(IndexTuple{}, f);
  }

  /// f dx_J; J need not be sorted, the sign of the sorting permutation is applied.
  static DiffForm elementary(const IntPoly& f, IndexTuple J) {
    for (auto j : J)
      if (j >= f.var_count()) throw std::out_of_range("form index exceeds variable count");
    int sign = 1;
    for (std::size_t i = 0; i < J.size(); ++i)
      for (std::size_t k = i + 1; k < J.size(); ++k) {
        if (J[i] == J[k]) sign = 0;
        else if (J[i] > J[k]) sign = -sign;
      }
    DiffForm w(J.size(), f.var_count());
    if (sign == 0) return w;
    std::sort(J.begin(), J.end());
    w.add(J, sign > 0 ? f : -f);
    return w;
  }

  /// dx_{i+1}
  static DiffForm dx(std::size_t var_count, std::size_t i) {
    return elementary(IntPoly::constant(var_count, 1), {i});
  }

  std::size_t degree() const { return q_; }
  std::size_t var_count() const { return vars_; }
  const Comps& comps() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  IntPoly coeff(const IndexTuple& J) const {
    auto it = comps_.find(J);
    return it == comps_.end() ? IntPoly(vars_) : it->second;
  }

  /// Coefficient of a degree-0 form.
  IntPoly as_poly() const {
    if (q_ != 0) throw std::logic_error("as_poly on a form of positive degree");
    return coeff({});
  }

  /// Adds f dx_J for an increasing tuple J.
  void add(const IndexTuple& J, const IntPoly& f) {
    if (J.size() != q_) throw std::invalid_argument("index tuple length differs from form degree");
    if (f.var_count() != vars_) throw std::invalid_argument("coefficient over wrong variable count");
    for (std::size_t i = 0; i < J.size(); ++i)
      if (J[i] >= vars_ || (i && J[i - 1] >= J[i]))
        throw std::invalid_argument("index tuple not strictly increasing in range");
    if (f.is_zero()) return;
    auto it = comps_.find(J);
    if (it == comps_.end()) {
      comps_.emplace(J, f);
      return;
    }
    it->second += f;
    if (it->second.is_zero()) comps_.erase(it);
  }

  DiffForm& operator+=(const DiffForm& o) {
    check_same(o);
    for (const auto& [J, f] : o.comps_) add(J, f);
    return *this;
  }
  DiffForm& operator-=(const DiffForm& o) {
    check_same(o);
    for (const auto& [J, f] : o.comps_) add(J, -f);
    return *this;
  }
  friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
  friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }
  friend DiffForm operator-(DiffForm a) {
    for (auto& [J, f] : a.comps_) f = -f;
    return a;
  }
  friend DiffForm operator*(const BigInt& c, const DiffForm& w) {
    return w.map_coeffs([&](const IntPoly& f) { return f * c; });
  }
  friend DiffForm operator*(const IntPoly& g, const DiffForm& w) {
    return w.map_coeffs([&](const IntPoly& f) { return g * f; });
  }

  friend bool operator==(const DiffForm& a, const DiffForm& b) {
    return a.q_ == b.q_ && a.vars_ == b.vars_ && a.comps_ == b.comps_;
  }

  /// Applies fn to every coefficient, dropping results that vanish.
  template <class Fn>
  DiffForm map_coeffs(Fn&& fn) const {
    DiffForm out(q_, vars_);
    for (const auto& [J, f] : comps_) {
      IntPoly g = fn(f);
      if (!g.is_zero()) out.comps_.emplace(J, std::move(g));
    }
    return out;
  }

  /// Largest total degree among coefficients, -1 for the zero form.
  std::int64_t coeff_degree() const {
    std::int64_t d = -1;
    for (const auto& [J, f] : comps_) d = std::max(d, f.degree());
    return d;
  }

  bool divisible_by(const BigInt& n) const {
    for (const auto& [J, f] : comps_)
      if (!f.divisible_by(n)) return false;
    return true;
  }

  std::string to_string() const;

private:
  void check_same(const DiffForm& o) const {
    if (o.q_ != q_ || o.vars_ != vars_)
      throw std::invalid_argument("forms of different degree or variable count");
  }

  std::size_t q_ = 0;
  std::size_t vars_ = 0;
  Comps comps_;
};

inline DiffForm exact_div(const DiffForm& w, const BigInt& n) {
  return w.map_coeffs([&](const IntPoly& f) { return exact_div(f, n); });
}

inline DiffForm reduce_mod(const DiffForm& w, const BigInt& n) {
  return w.map_coeffs([&](const IntPoly& f) { return reduce_mod(f, n); });
}

/// Exterior derivative.
inline DiffForm differential(const DiffForm& w) {
  DiffForm out(w.degree() + 1, w.var_count());
  for (const auto& [J, f] : w.comps())
    for (std::size_t i = 0; i < w.var_count(); ++i) {
      int sign = wedge_sign({i}, J);
      if (sign == 0) continue;
      IntPoly df = f.derivative(i);
      if (df.is_zero()) continue;
      out.add(merge_indices({i}, J), sign > 0 ? df : -df);
    }
  return out;
}

inline DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  if (a.var_count() != b.var_count())
    throw std::invalid_argument("wedge of forms over different variable counts");
  DiffForm out(a.degree() + b.degree(), a.var_count());
  for (const auto& [I, f] : a.comps())
    for (const auto& [J, g] : b.comps()) {
      int sign = wedge_sign(I, J);
      if (sign == 0) continue;
      IntPoly fg = f * g;
      out.add(merge_indices(I, J), sign > 0 ? fg : -fg);
    }
  return out;
}

/// Expansion into stored monomials c*x^a dx_J: index tuples in lexicographic order,
/// monomials within a tuple in graded-lex order.
inline std::vector<ElementaryTerm> monomial_decompose(const DiffForm& w) {
  std::vector<ElementaryTerm> out;
  for (const auto& [J, f] : w.comps())
    for (const auto& [e, c] : f.terms()) out.push_back({c, e, J});
  return out;
}

inline std::string DiffForm::to_string() const {
  if (comps_.empty()) return "0";
  std::string s;
  for (const auto& [J, f] : comps_) {
    if (!s.empty()) s += " + ";
    s += "(" + f.to_string() + ")";
    for (auto j : J) s += " dx" + std::to_string(j + 1);
  }
  return s;
}

}  // namespace wittrw
