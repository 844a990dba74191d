#pragma once

// Brute-force reference implementations. They share no code path with the
// fast kernels and are meant for cross-checking at small p; each has a hard
// cost budget so it cannot be pulled into a large sweep by accident.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "dense_set.hpp"
#include "errors.hpp"

namespace subsum::oracle {

inline constexpr double kEnergyBudget = 1e6;
inline constexpr double kSumsetBudget = 1e8;
inline constexpr u64 kDftMaxModulus = 10'000;

/// Quadruples a1 + b1 = a2 + b2, counted by grouping pairs by their sum.
inline unsigned __int128 naive_energy(const DenseSet& a, const DenseSet& b) {
  if (a.modulus() != b.modulus()) throw DomainError("naive_energy: modulus mismatch");
  if (static_cast<double>(a.size()) * static_cast<double>(b.size()) > kEnergyBudget)
    throw CapacityError("naive_energy: |A||B| exceeds the 10^6 pair budget");
  const u64 p = a.modulus();
  std::map<u64, u64> by_sum;
  for (u64 x : a.elements())
    for (u64 y : b.elements()) ++by_sum[(x + y) % p];
  unsigned __int128 total = 0;
  for (const auto& [s, n] : by_sum) total += static_cast<unsigned __int128>(n) * n;
  return total;
}

/// |Σ_{x∈A} e(-ξx/p)| accumulated in long double.
inline long double naive_dft(const DenseSet& a, u64 xi) {
  const u64 p = a.modulus();
  if (p > kDftMaxModulus) throw CapacityError("naive_dft: p exceeds 10^4");
  long double re = 0, im = 0;
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  for (u64 x : a.elements()) {
    const u64 k = static_cast<u64>((static_cast<unsigned __int128>(xi % p) * x) % p);
    const long double theta = two_pi * static_cast<long double>(k) / static_cast<long double>(p);
    re += std::cos(theta);
    im -= std::sin(theta);
  }
  return std::hypot(re, im);
}

/// {a ± b} by the full double loop.
inline DenseSet naive_sumset(const DenseSet& a, const DenseSet& b, Sign sign) {
  if (a.modulus() != b.modulus()) throw DomainError("naive_sumset: modulus mismatch");
  if (static_cast<double>(a.size()) * static_cast<double>(b.size()) > kSumsetBudget)
    throw CapacityError("naive_sumset: |A||B| exceeds the 10^8 pair budget");
  const u64 p = a.modulus();
  std::vector<u64> out;
  for (u64 x : a.elements())
    for (u64 y : b.elements()) out.push_back(sign == Sign::plus ? (x + y) % p : (x + p - y) % p);
  return DenseSet::from_elements(p, out);
}

}  // namespace subsum::oracle
