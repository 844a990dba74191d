#pragma once

// Exact integer convolution over the prime q = 2^64 - 2^32 + 1.
//
// q - 1 = 2^32 * (2^32 - 1), so power-of-two transforms up to length 2^32
// exist. Every coefficient produced by an indicator-function correlation on
// Z_p is at most p <= 2^31 < q, so a single modulus reproduces the integer
// result with no CRT step.

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "errors.hpp"

namespace subsum::ntt {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr u64 kModulus = 0xFFFF'FFFF'0000'0001ULL;
inline constexpr u64 kEpsilon = 0xFFFF'FFFFULL;  // 2^64 mod q
inline constexpr u64 kGenerator = 7;
inline constexpr int kMaxLog2 = 32;

constexpr u64 reduce128(u128 x) {
  const u64 lo = static_cast<u64>(x);
  const u64 hi = static_cast<u64>(x >> 64);
  const u64 hi_hi = hi >> 32;
  const u64 hi_lo = hi & kEpsilon;
  u64 t0 = lo - hi_hi;
  if (lo < hi_hi) t0 -= kEpsilon;
  const u64 t1 = hi_lo * kEpsilon;
  u64 t2 = t0 + t1;
  if (t2 < t1) t2 += kEpsilon;
  if (t2 >= kModulus) t2 -= kModulus;
  return t2;
}

constexpr u64 mul(u64 a, u64 b) { return reduce128(static_cast<u128>(a) * b); }

constexpr u64 add(u64 a, u64 b) {
  u64 s = a + b;
  if (s < a || s >= kModulus) s -= kModulus;
  return s;
}

constexpr u64 sub(u64 a, u64 b) { return a >= b ? a - b : a + (kModulus - b); }

constexpr u64 power(u64 base, u64 exp) {
  u64 r = 1;
  while (exp) {
    if (exp & 1) r = mul(r, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return r;
}

constexpr u64 inverse(u64 a) { return power(a, kModulus - 2); }

/// In-place cyclic NTT of power-of-two length (natural order in and out).
inline void transform(std::vector<u64>& a, bool invert) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  const int log_n = std::countr_zero(n);
  if (!std::has_single_bit(n) || log_n > kMaxLog2)
    throw CapacityError("ntt::transform: length must be a power of two <= 2^32");

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  std::vector<u64> roots(n / 2);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u64 w = power(kGenerator, (kModulus - 1) / len);
    if (invert) w = inverse(w);
    const std::size_t half = len / 2;
    roots[0] = 1;
    for (std::size_t k = 1; k < half; ++k) roots[k] = mul(roots[k - 1], w);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const u64 x = a[i + k];
        const u64 y = mul(a[i + k + half], roots[k]);
        a[i + k] = add(x, y);
        a[i + k + half] = sub(x, y);
      }
    }
  }
  if (invert) {
    const u64 n_inv = inverse(static_cast<u64>(n));
    for (auto& x : a) x = mul(x, n_inv);
  }
}

/// out[s] = sum_y f[y] * g[(y + s) mod p] for s in [0, p), p = f.size() = g.size().
/// Entries of f and g must be small enough that every true output is < q.
inline std::vector<u64> cyclic_correlation(std::span<const u64> f, std::span<const u64> g) {
  const std::size_t p = f.size();
  if (g.size() != p) throw DomainError("cyclic_correlation: length mismatch");
  if (p == 0) return {};
  if (p > (std::size_t{1} << 31)) throw CapacityError("cyclic_correlation: length exceeds 2^31");
  const std::size_t m = std::bit_ceil(2 * p);

  std::vector<u64> a(m, 0), b(m, 0);
  for (std::size_t i = 0; i < p; ++i) a[i] = f[p - 1 - i];
  for (std::size_t i = 0; i < p; ++i) b[i] = g[i];
  transform(a, false);
  transform(b, false);
  for (std::size_t i = 0; i < m; ++i) a[i] = mul(a[i], b[i]);
  transform(a, true);

  // a[k] holds the linear term for shift s = k - (p - 1), k in [0, 2p - 2].
  std::vector<u64> out(p, 0);
  for (std::size_t k = 0; k + 1 < 2 * p; ++k) {
    const std::size_t s = (k + 1) % p;  // (k - (p - 1)) mod p
    out[s] += a[k];
  }
  return out;
}

}  // namespace subsum::ntt
