#pragma once

#include "wittrw/bigint.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wittrw {

/// A finite set of positive integers closed under taking divisors.
///
/// Elements are kept sorted ascending; every S-indexed family in this library
/// (ghost tuples, Witt coordinates, form components) is stored in this order.
class TruncationSet {
public:
  TruncationSet() = default;

  explicit TruncationSet(std::vector<std::int64_t> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    for (auto n : elems_) {
      if (n < 1) throw std::invalid_argument("truncation set elements must be positive");
      for (auto d : divisors(n))
        if (!contains(d))
          throw std::invalid_argument("truncation set not divisor-closed: " + std::to_string(d) +
                                      " divides " + std::to_string(n));
    }
  }

  TruncationSet(std::initializer_list<std::int64_t> elems)
      : TruncationSet(std::vector<std::int64_t>(elems)) {}

  /// {1, p, ..., p^n}
  static TruncationSet p_typical(std::int64_t p, int n) {
    std::vector<std::int64_t> e;
    std::int64_t v = 1;
    for (int i = 0; i <= n; ++i, v *= p) e.push_back(v);
    return TruncationSet(std::move(e));
  }

  /// All divisors of n.
  static TruncationSet divisors_of(std::int64_t n) { return TruncationSet(divisors(n)); }

  const std::vector<std::int64_t>& elems() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool contains(std::int64_t n) const {
    return std::binary_search(elems_.begin(), elems_.end(), n);
  }

  /// Position of n in elems(), if present.
  std::optional<std::size_t> index_of(std::int64_t n) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), n);
    if (it == elems_.end() || *it != n) return std::nullopt;
    return static_cast<std::size_t>(it - elems_.begin());
  }

  std::size_t at(std::int64_t n) const {
    auto i = index_of(n);
    if (!i) throw std::out_of_range("index " + std::to_string(n) + " not in truncation set");
    return *i;
  }

  /// S/n = {k : kn in S}
  TruncationSet quotient(std::int64_t n) const {
    std::vector<std::int64_t> out;
    for (auto k : elems_)
      if (k % n == 0) out.push_back(k / n);
    return TruncationSet(std::move(out));
  }

  /// S(p) = {k in S : p does not divide k}
  TruncationSet coprime_part(std::int64_t p) const {
    std::vector<std::int64_t> out;
    for (auto k : elems_)
      if (k % p != 0) out.push_back(k);
    return TruncationSet(std::move(out));
  }

  /// lcm of all elements (1 for the empty set).
  std::int64_t sigma() const {
    std::int64_t l = 1;
    for (auto k : elems_) l = lcm(l, k);
    return l;
  }

  /// Primes dividing some element, ascending.
  std::vector<std::int64_t> primes() const {
    std::vector<std::int64_t> out;
    for (auto k : elems_)
      if (is_prime(k)) out.push_back(k);
    return out;
  }

  bool is_subset_of(const TruncationSet& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
  }

  /// If S = {1, p, ..., p^n} for a prime p, returns p (n >= 1), otherwise nothing.
  std::optional<std::int64_t> typical_prime() const {
    auto ps = primes();
    if (ps.size() != 1) return std::nullopt;
    std::int64_t v = 1;
    for (auto k : elems_) {
      if (k != v) return std::nullopt;
      v *= ps[0];
    }
    return ps[0];
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(elems_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const TruncationSet&, const TruncationSet&) = default;

private:
  std::vector<std::int64_t> elems_;
};

}  // namespace wittrw
