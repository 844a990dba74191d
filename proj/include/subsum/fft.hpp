#pragma once

/**
 * @file fft.hpp
 * @brief Complex FFT and an arbitrary-length chirp (Bluestein) DFT for real
 *        integer input, each returned together with a rigorous bound on the
 *        absolute forward error of every output entry.
 *
 * Error model: IEEE double with unit roundoff u = 2^-53, round-to-nearest,
 * no underflow. Twiddle factors and chirps are evaluated in long double and
 * rounded once; their complex absolute error is bounded by unit_root_error().
 * The radix-2 bound is the standard one for Cooley-Tukey with precomputed
 * twiddles: ||fl(Fx) - Fx||_2 <= k*eta/(1 - k*eta) * ||Fx||_2, with
 * k = log2 n and eta = mu + gamma_4 * (sqrt(2) + mu).
 */

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "errors.hpp"

namespace subsum::numeric {

using cplx = std::complex<double>;

inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

/// gamma_n = n u / (1 - n u).
constexpr double gamma(double n) { return n * kUnitRoundoff / (1.0 - n * kUnitRoundoff); }

/// Absolute error bound for a unit complex number exp(i*pi*m/n) computed by
/// unit_root(): argument error of the long-double reduction, two long-double
/// ulps in cosl/sinl, one rounding to double, per component; sqrt(2) for
/// the complex modulus.
inline double unit_root_error() {
  const double ul = std::ldexp(1.0, -(std::numeric_limits<long double>::digits - 1)) / 2;
  return std::sqrt(2.0) * ((6.0 * std::numbers::pi + 4.0) * ul + kUnitRoundoff);
}

/// exp(-i*pi*m/n) with 0 <= m < 2n.
inline cplx unit_root(std::uint64_t m, std::uint64_t n) {
  const long double theta = std::numbers::pi_v<long double> * static_cast<long double>(m) /
                            static_cast<long double>(n);
  return {static_cast<double>(std::cos(theta)), static_cast<double>(-std::sin(theta))};
}

/// Relative 2-norm error bound of fft() on a length-n transform.
inline double fft_relative_error(std::size_t n) {
  if (n <= 1) return 0.0;
  const double k = std::countr_zero(n);
  const double mu = unit_root_error();
  const double eta = mu + gamma(4) * (std::sqrt(2.0) + mu);
  return k * eta / (1.0 - k * eta);
}

/// In-place unnormalized DFT of power-of-two length (sign -1 forward,
/// +1 inverse, no 1/n scaling).
inline void fft(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  if (!std::has_single_bit(n)) throw DomainError("fft: length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  // Twiddles evaluated directly, never by recurrence.
  std::vector<cplx> tw(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    tw[k] = unit_root(2 * k, n);
    if (inverse) tw[k] = std::conj(tw[k]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx x = a[i + k];
        const cplx y = a[i + k + half] * tw[k * stride];
        a[i + k] = x + y;
        a[i + k + half] = x - y;
      }
    }
  }
}

struct CertifiedDft {
  std::vector<cplx> values;
  double abs_err = 0.0;  // bound on |values[k] - exact[k]| for every k
};

/**
 * y[k] = sum_s c[s] exp(-2 pi i k s / n), k in [0, n), for any n >= 1, via
 * the chirp identity ks = (k^2 + s^2 - (k - s)^2) / 2 and one power-of-two
 * cyclic convolution of length M >= 2n - 1. The inputs are nonnegative
 * integers exactly representable in double.
 */
inline CertifiedDft chirp_dft(std::span<const double> c) {
  const std::size_t n = c.size();
  CertifiedDft out;
  if (n == 0) return out;
  const std::size_t m = std::bit_ceil(2 * n - 1 < 2 ? std::size_t{2} : 2 * n - 1);

  // w[k] = exp(-i*pi*k^2/n); k^2 is reduced mod 2n exactly.
  std::vector<cplx> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto k2 = static_cast<std::uint64_t>((static_cast<unsigned __int128>(k) * k) % (2 * n));
    w[k] = unit_root(k2, n);
  }
  std::vector<cplx> a(m, 0.0), v(m, 0.0);
  for (std::size_t k = 0; k < n; ++k) a[k] = c[k] * w[k];
  v[0] = std::conj(w[0]);
  for (std::size_t k = 1; k < n; ++k) v[k] = v[m - k] = std::conj(w[k]);
  fft(a, false);
  fft(v, false);
  for (std::size_t i = 0; i < m; ++i) a[i] *= v[i];
  fft(a, true);
  const double inv_m = 1.0 / static_cast<double>(m);  // exact: m is a power of two
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = w[k] * (a[k] * inv_m);

  // Forward error bound, following each stage above.
  const double u = kUnitRoundoff;
  const double mu = unit_root_error();
  const double eps_f = fft_relative_error(m);
  const double g2 = std::sqrt(2.0) * gamma(2);
  long double c1l = 0, c2l = 0;
  for (double x : c) {
    c1l += x;
    c2l += static_cast<long double>(x) * x;
  }
  const double c1 = static_cast<double>(c1l) * (1 + 1e-12);
  const double c2 = std::sqrt(static_cast<double>(c2l)) * (1 + 1e-12);
  const double sqrt_m = std::sqrt(static_cast<double>(m));
  const double v1 = static_cast<double>(2 * n - 1);
  const double vn = std::sqrt(v1);

  const double eps_a = mu + u * (1 + mu);
  const double alpha = eps_f * (1 + eps_a) + eps_a;
  const double beta = eps_f * (1 + mu) + mu;
  const double e_a = sqrt_m * c2 * alpha;             // ||A' - Fa||_2
  const double e_v = sqrt_m * vn * beta;              // ||V' - Fv||_2
  const double v_inf = v1 + e_v;                      // bound on ||V'||_inf
  const double a_norm = sqrt_m * c2 * (1 + alpha);    // bound on ||A'||_2
  const double e_p = e_a * v_inf + c1 * e_v + g2 * a_norm * v_inf;
  const double p_norm = sqrt_m * c2 * v1;             // ||Fa ∘ Fv||_2
  const double e_z = (e_p + eps_f * (p_norm + e_p)) / sqrt_m;
  const double err = e_z * (1 + mu) + mu * c1 + g2 * (1 + mu) * (c1 + e_z);
  out.abs_err = err * (1 + 1e-6);
  return out;
}

/// Bound on |fl(sum) - sum| for a left-to-right complex sum of `terms`
/// values whose real and imaginary parts have absolute sums <= abs_sum.
inline double summation_error(std::size_t terms, double abs_sum) {
  if (terms <= 1) return 0.0;
  return std::sqrt(2.0) * gamma(static_cast<double>(terms - 1)) * abs_sum;
}

}  // namespace subsum::numeric
