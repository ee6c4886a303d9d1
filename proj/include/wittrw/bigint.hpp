#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wittrw {

using BigInt = boost::multiprecision::cpp_int;

// Thrown by every exact division that leaves a remainder.
class NotDivisible : public std::runtime_error {
public:
  explicit NotDivisible(const std::string& what) : std::runtime_error(what) {}
};

inline bool divides(const BigInt& n, const BigInt& a) {
  if (n == 0) return a == 0;
  return a % n == 0;
}

inline BigInt pow(BigInt base, std::uint64_t e) {
  BigInt result = 1;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

inline std::int64_t ipow(std::int64_t base, unsigned e) {
  std::int64_t r = 1;
  while (e--) r *= base;
  return r;
}

/// Residue of a in [0, n) for n > 0.
inline BigInt mod_floor(const BigInt& a, const BigInt& n) {
  BigInt r = a % n;
  if (r < 0) r += n;
  return r;
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

inline std::int64_t lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

struct Bezout {
  std::int64_t g;
  std::int64_t i;  // coefficient of a
  std::int64_t j;  // coefficient of b
};

/// i*a + j*b = g = gcd(a, b) for a, b >= 0.
inline Bezout extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
    std::tie(old_t, t) = std::pair{t, old_t - q * t};
  }
  return {old_r, old_s, old_t};
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Prime factorization by trial division, as (prime, exponent) pairs ascending.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline int mobius(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("mobius: n must be positive");
  int sign = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

/// p-adic valuation of a nonzero integer.
inline int ord_p(std::int64_t n, std::int64_t p) {
  if (n == 0) throw std::invalid_argument("ord_p: zero has infinite valuation");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

inline BigInt parse_bigint(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("bad integer literal: " + s);
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + s);
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace wittrw
