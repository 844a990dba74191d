#pragma once

/**
 * @file modular.hpp
 * @brief 64-bit modular arithmetic, deterministic primality, factorization,
 *        divisor enumeration and primitive roots.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace subsum {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

namespace detail {

constexpr bool miller_rabin_round(u64 n, u64 a, u64 d, int r) {
  a %= n;
  if (a == 0) return true;
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

/// Deterministic for every 64-bit input (Miller-Rabin with the seven
/// Jaeschke/Sinclair bases).
constexpr bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (!detail::miller_rabin_round(n, a, d, r)) return false;
  }
  return true;
}

namespace detail {

// Pollard-rho with Brent's cycle detection; n must be odd and composite.
inline u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 block = 128;
    u64 len = 1;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < len; ++i) y = f(y);
      u64 k = 0;
      while (k < len && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min(block, len - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += block;
      }
      len <<= 1;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 f = pollard_brent(n);
  factor_into(f, out);
  factor_into(n / f, out);
}

}  // namespace detail

/// Prime factors of n with multiplicity, ascending. Trial division up to
/// 10^6, Pollard-rho for whatever cofactor remains.
inline std::vector<u64> factorize(u64 n) {
  if (n < 2) throw DomainError("factorize: input must be >= 2, got " + std::to_string(n));
  std::vector<u64> out;
  constexpr u64 kTrialLimit = 1'000'000;
  for (u64 q = 2; q <= kTrialLimit && q * q <= n; q += (q == 2 ? 1 : 2)) {
    while (n % q == 0) {
      out.push_back(q);
      n /= q;
    }
  }
  if (n > 1) detail::factor_into(n, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Distinct primes dividing n (n >= 2).
inline std::vector<u64> distinct_prime_factors(u64 n) {
  auto f = factorize(n);
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

/// All positive divisors of n, ascending. divisors(1) = {1}.
inline std::vector<u64> divisors(u64 n) {
  if (n == 0) throw DomainError("divisors: input must be positive");
  std::vector<u64> divs{1};
  if (n == 1) return divs;
  auto f = factorize(n);
  for (std::size_t i = 0; i < f.size();) {
    std::size_t j = i;
    while (j < f.size() && f[j] == f[i]) ++j;
    const std::size_t count = divs.size();
    u64 pw = 1;
    for (std::size_t e = 0; e < j - i; ++e) {
      pw *= f[i];
      for (std::size_t k = 0; k < count; ++k) divs.push_back(divs[k] * pw);
    }
    i = j;
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

/// Smallest g in [1, p-1] whose multiplicative order is p-1.
inline u64 primitive_root(u64 p) {
  if (!is_prime(p)) throw DomainError("primitive_root: " + std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  const auto qs = distinct_prime_factors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    if (std::all_of(qs.begin(), qs.end(), [&](u64 q) { return pow_mod(g, (p - 1) / q, p) != 1; }))
      return g;
  }
  throw DomainError("primitive_root: none found");  // unreachable for prime p
}

/// Multiplicative order of a modulo prime p (a != 0).
inline u64 multiplicative_order(u64 a, u64 p) {
  a %= p;
  if (a == 0) throw DomainError("multiplicative_order: zero has no order");
  if (p == 2) return 1;
  u64 order = p - 1;
  for (u64 q : distinct_prime_factors(p - 1)) {
    while (order % q == 0 && pow_mod(a, order / q, p) == 1) order /= q;
  }
  return order;
}

/// Primes in [lo, hi], ascending (segmented by simple sieve; hi < 2^32).
inline std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2 || lo > hi) return out;
  lo = std::max<u64>(lo, 2);
  std::vector<bool> composite(hi - lo + 1, false);
  for (u64 q = 2; q * q <= hi; ++q) {
    u64 start = std::max(q * q, (lo + q - 1) / q * q);
    for (u64 m = start; m <= hi; m += q) composite[m - lo] = true;
  }
  for (u64 n = lo; n <= hi; ++n)
    if (!composite[n - lo]) out.push_back(n);
  return out;
}

}  // namespace subsum
