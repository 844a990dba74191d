#pragma once

/**
 * @file spectra.hpp
 * @brief Exact correlation spectra (A∘B)(s) = Σ_y A(y) B(y+s), energy moments,
 *        cross energies, Fourier magnitude profiles with certified error,
 *        and popular differences.
 *
 * Counts, energies and set operations are exact integers. Only Fourier
 * magnitudes are floating-point, and they carry an explicit error bound.
 */

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dense_set.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "ntt.hpp"

namespace subsum {

using u128 = unsigned __int128;

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

struct CorrelationSpectrum {
  u64 p = 0;
  std::vector<u64> counts;  // counts[s] = (A∘B)(s)

  u64 mass() const {
    u64 m = 0;
    for (u64 c : counts) m += c;
    return m;
  }
  bool operator==(const CorrelationSpectrum&) const = default;
};

struct EnergyMoments {
  u128 e2 = 0;
  u128 e3 = 0;
  u128 e4 = 0;
};

/// Exact by a loop over A's elements and every shift: O(|A| p).
inline CorrelationSpectrum correlation_direct(const DenseSet& a, const DenseSet& b) {
  detail::require_same_modulus(a, b, "correlation_direct");
  const u64 p = a.modulus();
  CorrelationSpectrum out{p, std::vector<u64>(p, 0)};
  a.for_each([&](u64 y) {
    // s in [0, p - y): y + s in [y, p); s in [p - y, p): y + s - p in [0, y).
    for (u64 s = 0; s < p - y; ++s) out.counts[s] += b.contains(y + s);
    for (u64 s = p - y; s < p; ++s) out.counts[s] += b.contains(y + s - p);
  });
  return out;
}

/// Exact by one NTT cyclic correlation over q = 2^64 - 2^32 + 1: O(p log p).
inline CorrelationSpectrum correlation_ntt(const DenseSet& a, const DenseSet& b) {
  detail::require_same_modulus(a, b, "correlation_ntt");
  const u64 p = a.modulus();
  if (p > (u64{1} << 31))
    throw CapacityError("correlation_ntt: p = " + std::to_string(p) + " exceeds 2^31");
  std::vector<u64> f(p, 0), g(p, 0);
  a.for_each([&](u64 x) { f[x] = 1; });
  b.for_each([&](u64 x) { g[x] = 1; });
  return {p, ntt::cyclic_correlation(f, g)};
}

namespace detail {

// Histogram of b - a over all pairs: O(|A||B| + p).
inline CorrelationSpectrum correlation_pairs(const DenseSet& a, const DenseSet& b) {
  const u64 p = a.modulus();
  CorrelationSpectrum out{p, std::vector<u64>(p, 0)};
  const auto xs = a.elements();
  const auto ys = b.elements();
  for (u64 x : xs)
    for (u64 y : ys) out.counts[y >= x ? y - x : y + p - x] += 1;
  return out;
}

inline double ntt_cost(u64 p) {
  const double m = static_cast<double>(std::bit_ceil(2 * p));
  return 3.0 * m * std::log2(m) + 4.0 * m;
}

}  // namespace detail

/// Exact spectrum by whichever kernel is cheapest for the operand sizes.
inline CorrelationSpectrum correlation(const DenseSet& a, const DenseSet& b) {
  detail::require_same_modulus(a, b, "correlation");
  const u64 p = a.modulus();
  const double pairs = static_cast<double>(a.size()) * static_cast<double>(b.size());
  const double direct = static_cast<double>(std::min(a.size(), b.size())) * static_cast<double>(p);
  const double fast = p <= (u64{1} << 31) ? detail::ntt_cost(p) : INFINITY;
  if (pairs <= direct && pairs <= fast) return detail::correlation_pairs(a, b);
  if (fast < direct) return correlation_ntt(a, b);
  if (a.size() <= b.size()) return correlation_direct(a, b);
  // (A∘B)(s) = (B∘A)(-s)
  auto rev = correlation_direct(b, a);
  CorrelationSpectrum out{p, std::vector<u64>(p, 0)};
  for (u64 s = 0; s < p; ++s) out.counts[s] = rev.counts[s == 0 ? 0 : p - s];
  return out;
}

namespace detail {

inline void add_checked(u128& acc, u128 v) {
  if (__builtin_add_overflow(acc, v, &acc)) throw CapacityError("energy_moments: 128-bit overflow");
}

inline u128 mul_checked(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("energy_moments: 128-bit overflow");
  return r;
}

}  // namespace detail

/// Second, third and fourth moments of the spectrum, exact.
inline EnergyMoments energy_moments(const CorrelationSpectrum& spec) {
  EnergyMoments m;
  for (u64 c : spec.counts) {
    const u128 c2 = static_cast<u128>(c) * c;
    detail::add_checked(m.e2, c2);
    detail::add_checked(m.e3, detail::mul_checked(c2, c));
    detail::add_checked(m.e4, detail::mul_checked(c2, c2));
  }
  return m;
}

/// E(A,B) = Σ_x (A∘B)(x)^2, the number of solutions of a1 + b1 = a2 + b2.
inline u128 cross_energy(const DenseSet& a, const DenseSet& b) {
  detail::require_same_modulus(a, b, "cross_energy");
  detail::require_nonempty(a, "cross_energy");
  detail::require_nonempty(b, "cross_energy");
  return energy_moments(correlation(a, b)).e2;
}

struct FourierProfile {
  u64 p = 0;
  double rho = 0.0;                // max over ξ != 0 of |Â(ξ)|
  u64 argmax = 0;                  // a ξ attaining rho (0 when p = 1 or A = ∅)
  double err = 0.0;                // bound on |computed - exact| for every magnitude
  std::vector<double> magnitudes;  // |Â(ξ)| for all ξ, when requested
};

/**
 * |Â(ξ)| for every ξ from the exact autocorrelation:
 * |Â(ξ)|^2 = Σ_s (A∘A)(s) e(-ξs/p), one chirp transform of length p.
 */
inline FourierProfile fourier_profile(const DenseSet& a, bool full) {
  const u64 p = a.modulus();
  FourierProfile out;
  out.p = p;
  const auto spec = correlation(a, a);
  std::vector<double> c(spec.counts.begin(), spec.counts.end());
  const auto dft = numeric::chirp_dft(c);
  const double delta = dft.abs_err;
  const double u = numeric::kUnitRoundoff;
  if (full) out.magnitudes.resize(p);
  for (u64 xi = 0; xi < p; ++xi) {
    double mag, e;
    if (xi == 0) {
      mag = static_cast<double>(a.size());
      e = 0.0;
    } else {
      const double t = dft.values[xi].real();
      if (t <= 0.0) {
        mag = 0.0;
        e = std::sqrt(delta);
      } else {
        mag = std::sqrt(t);
        e = std::min(std::sqrt(delta), delta / mag) + u * mag;
      }
      if (out.argmax == 0 || mag > out.rho) {
        out.rho = mag;
        out.argmax = xi;
      }
    }
    out.err = std::max(out.err, e);
    if (full) out.magnitudes[xi] = mag;
  }
  return out;
}

struct Rational {
  u64 num = 0;
  u64 den = 1;
};

/// { s != 0 : (A∘A)(s) >= tau }.
inline DenseSet popular_differences(const DenseSet& a, Rational tau) {
  if (tau.den == 0) throw DomainError("popular_differences: zero denominator");
  const u64 p = a.modulus();
  const auto spec = correlation(a, a);
  std::vector<u64> xs;
  for (u64 s = 1; s < p; ++s)
    if (static_cast<u128>(spec.counts[s]) * tau.den >= tau.num) xs.push_back(s);
  return DenseSet::from_elements(p, xs);
}

}  // namespace subsum
