#pragma once

/**
 * @file invariant.hpp
 * @brief O(p) kernels for a subgroup R and its R-invariant sets.
 *
 * (R∘R)(x), (R*R)(x) and R̂(ξ) depend only on the coset of x (resp. ξ) in
 * F_p^* / R, so one evaluation per coset representative g^j, j in [0, m),
 * m = (p-1)/d, determines the whole function. An R-invariant Q ⊆ F_p^* is a
 * set J of coset indices, and Q̂(g^i) = Σ_{j∈J} R̂(g^{i+j}).
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "dense_set.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "field.hpp"
#include "spectra.hpp"

namespace subsum {

/// tw[k] = e(-k/p) = exp(-2πik/p), each within numeric::unit_root_error().
class TwiddleTable {
 public:
  explicit TwiddleTable(u64 p) : p_(p), tw_(p) {
    for (u64 k = 0; k < p; ++k) tw_[k] = numeric::unit_root(2 * k, p);
  }
  u64 p() const { return p_; }
  const numeric::cplx& operator[](u64 k) const { return tw_[k]; }

 private:
  u64 p_;
  std::vector<numeric::cplx> tw_;
};

/// Coset representatives g^j, j in [0, m).
inline std::vector<u64> coset_representatives(const SubgroupDescriptor& r) {
  const u64 m = r.index();
  std::vector<u64> reps(m);
  u64 x = 1;
  for (u64 j = 0; j < m; ++j) {
    reps[j] = x;
    x = mul_mod(x, r.field().g(), r.p());
  }
  return reps;
}

/// Per-coset values of the difference and sum representation functions.
struct SubgroupSpectrum {
  u64 p = 0;
  u64 d = 0;
  std::vector<u64> diff;  // diff[j] = (R∘R)(g^j) = #{y ∈ R : y + g^j ∈ R}
  std::vector<u64> sum;   // sum[j]  = (R*R)(g^j) = #{y ∈ R : g^j - y ∈ R}
  bool minus_one_in_r = false;

  /// Full spectrum (R∘R)(s) for s in [0, p).
  CorrelationSpectrum expand(const SubgroupDescriptor& r) const {
    CorrelationSpectrum out{p, std::vector<u64>(p, 0)};
    out.counts[0] = d;
    for (u64 x = 1; x < p; ++x) out.counts[x] = diff[r.coset_of(x)];
    return out;
  }

  EnergyMoments moments() const {
    EnergyMoments m;
    m.e2 = static_cast<u128>(d) * d;
    m.e3 = detail::mul_checked(m.e2, d);
    m.e4 = detail::mul_checked(m.e3, d);
    for (u64 c : diff) {
      const u128 c2 = static_cast<u128>(c) * c;
      detail::add_checked(m.e2, detail::mul_checked(c2, d));
      detail::add_checked(m.e3, detail::mul_checked(detail::mul_checked(c2, c), d));
      detail::add_checked(m.e4, detail::mul_checked(detail::mul_checked(c2, c2), d));
    }
    return m;
  }

  u64 card_diff() const {
    u64 n = 1;
    for (u64 c : diff) n += c ? d : 0;
    return n;
  }

  u64 card_sum() const {
    u64 n = minus_one_in_r ? 1 : 0;
    for (u64 c : sum) n += c ? d : 0;
    return n;
  }
};

inline SubgroupSpectrum subgroup_spectrum(const SubgroupDescriptor& r) {
  const u64 p = r.p();
  const auto reps = coset_representatives(r);
  SubgroupSpectrum out;
  out.p = p;
  out.d = r.order();
  out.diff.assign(reps.size(), 0);
  out.sum.assign(reps.size(), 0);
  out.minus_one_in_r = r.contains(p - 1);
  const auto& elems = r.elements();
  for (std::size_t j = 0; j < reps.size(); ++j) {
    const u64 x = reps[j];
    u64 nd = 0, ns = 0;
    for (u64 y : r.powers()) {
      u64 a = y + x;
      if (a >= p) a -= p;
      nd += elems.contains(a);
      const u64 b = x >= y ? x - y : x + p - y;
      ns += elems.contains(b);
    }
    out.diff[j] = nd;
    out.sum[j] = ns;
  }
  return out;
}

/// R̂(g^j) for each coset j, with a common absolute error bound.
struct SubgroupFourier {
  std::vector<numeric::cplx> values;
  double err = 0.0;
};

inline SubgroupFourier subgroup_fourier(const SubgroupDescriptor& r, const TwiddleTable& tw) {
  if (tw.p() != r.p()) throw DomainError("subgroup_fourier: twiddle table for wrong modulus");
  const u64 p = r.p();
  const auto reps = coset_representatives(r);
  SubgroupFourier out;
  out.values.resize(reps.size());
  for (std::size_t j = 0; j < reps.size(); ++j) {
    numeric::cplx acc = 0.0;
    for (u64 y : r.powers()) acc += tw[mul_mod(reps[j], y, p)];
    out.values[j] = acc;
  }
  const double mu = numeric::unit_root_error();
  const double d = static_cast<double>(r.order());
  out.err = d * mu + numeric::summation_error(r.order(), d * (1 + mu));
  return out;
}

/// Coset indices of an R-invariant Q ⊆ F_p^*.
inline std::vector<u64> coset_indices(const DenseSet& q, const SubgroupDescriptor& r) {
  std::vector<u64> out;
  for (u64 x : coset_decomposition(q, r)) out.push_back(r.coset_of(x));
  std::sort(out.begin(), out.end());
  return out;
}

/// max_{ξ≠0} |Q̂(ξ)| for Q = ∪_{j∈J} g^j R, with certified error.
/// Cost |J| * m.
inline FourierProfile invariant_fourier_profile(const std::vector<u64>& cosets,
                                                const SubgroupDescriptor& r,
                                                const SubgroupFourier& rf) {
  const u64 m = r.index();
  FourierProfile out;
  out.p = r.p();
  if (cosets.empty()) return out;
  const double u = numeric::kUnitRoundoff;
  const auto reps = coset_representatives(r);
  const double n = static_cast<double>(cosets.size());
  for (u64 i = 0; i < m; ++i) {
    numeric::cplx acc = 0.0;
    double abs_sum = 0.0;
    for (u64 j : cosets) {
      const auto& f = rf.values[(i + j) % m];
      acc += f;
      abs_sum += std::abs(f.real()) + std::abs(f.imag());
    }
    const double mag = std::abs(acc);
    const double e = n * rf.err +
                     numeric::summation_error(cosets.size(), (abs_sum + n * rf.err) * (1 + 4 * u)) +
                     2 * u * mag;
    if (out.argmax == 0 || mag > out.rho) {
      out.rho = mag;
      out.argmax = reps[i];
    }
    out.err = std::max(out.err, e);
  }
  return out;
}

}  // namespace subsum
