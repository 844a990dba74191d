#pragma once

/**
 * @file verifier.hpp
 * @brief Claim checks: exact identities and inequalities for arbitrary sets,
 *        Fourier bounds for R-invariant sets, basis orders, and the
 *        per-subgroup experiment record.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dense_set.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "invariant.hpp"
#include "spectra.hpp"
#include "verdict.hpp"

namespace subsum {

inline BigInt to_big(u128 v) {
  BigInt b = static_cast<u64>(v >> 64);
  b <<= 64;
  b += static_cast<u64>(v);
  return b;
}

inline BigInt big_pow(u64 base, unsigned exp) { return boost::multiprecision::pow(BigInt(base), exp); }

namespace detail {

// Slices A_s for every s with (A∘A)(s) > 0, in ascending s.
struct SliceTable {
  std::vector<u64> shifts;
  std::vector<DenseSet> slices;
};

inline SliceTable slice_table(const DenseSet& a, const CorrelationSpectrum& auto_spec) {
  SliceTable t;
  for (u64 s = 0; s < a.modulus(); ++s) {
    if (auto_spec.counts[s] == 0) continue;
    t.shifts.push_back(s);
    t.slices.push_back(slice(a, s));
  }
  return t;
}

inline std::mt19937_64 seeded_rng(u64 seed, u64 a, u64 b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

// Uniform in [0, n) without relying on implementation-defined distributions.
inline u64 uniform_below(std::mt19937_64& rng, u64 n) {
  const u64 limit = ~u64{0} - (~u64{0} % n);
  u64 x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

inline double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Arbitrary sets
// ---------------------------------------------------------------------------

/// The three slice identities: Σ_s E(A,A_s) = E3(A), Σ_{s,t} E(A_s,A_t) =
/// E4(A), and (A_s∘A_s)(t) = (A_t∘A_t)(s). A failure means a bug, not a
/// counterexample.
inline std::vector<Verdict> verify_exact_identities(const DenseSet& a) {
  if (a.empty()) throw DomainError("verify_exact_identities: A must be nonempty");
  const auto spec = correlation(a, a);
  const auto mom = energy_moments(spec);
  const auto table = detail::slice_table(a, spec);
  const std::size_t n = table.shifts.size();

  u128 sum_e3 = 0;
  for (const auto& as : table.slices) sum_e3 += cross_energy(a, as);

  u128 sum_e4 = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sum_e4 += cross_energy(table.slices[i], table.slices[j]);

  std::vector<CorrelationSpectrum> slice_specs;
  slice_specs.reserve(n);
  for (const auto& as : table.slices) slice_specs.push_back(correlation(as, as));
  u64 mismatches = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (slice_specs[i].counts[table.shifts[j]] != slice_specs[j].counts[table.shifts[i]]) ++mismatches;

  std::vector<Verdict> out;
  out.push_back(exact_equal("lemma-3.1-E3", to_big(sum_e3), to_big(mom.e3)));
  out.push_back(exact_equal("lemma-3.1-E4", to_big(sum_e4), to_big(mom.e4)));
  out.push_back(exact_equal("lemma-3.1-swap", BigInt(mismatches), BigInt(0)));
  out.back().lhs = static_cast<double>(n * n - mismatches);
  out.back().rhs = static_cast<double>(n * n);
  out.back().ratio = safe_ratio(out.back().lhs, out.back().rhs);
  return out;
}

/// Full (s, t) double sum up to this many differences; sampled above it.
inline constexpr std::size_t kDoubleSumCutoff = 512;
inline constexpr std::size_t kDoubleSumSamples = 1 << 16;

/// Σ_{s≠0} |A ± A_s| >= |A|^6 / (2 E3(A)) and
/// Σ_{s,t≠0} |A_s ± A_t| >= |A|^8 / (4 E4(A)).
inline std::vector<Verdict> verify_slice_lower_bounds(const DenseSet& a, Sign sign, u64 seed = 1) {
  if (a.size() < 2) throw DomainError("verify_slice_lower_bounds: |A| must be at least 2");
  const auto spec = correlation(a, a);
  const auto mom = energy_moments(spec);
  auto table = detail::slice_table(a, spec);
  // Drop s = 0 (always first).
  table.shifts.erase(table.shifts.begin());
  table.slices.erase(table.slices.begin());
  const std::string tag = sign == Sign::minus ? "minus" : "plus";
  const BigInt n = a.size();

  BigInt lhs1 = 0;
  for (const auto& as : table.slices) lhs1 += sumset(a, as, sign).size();

  std::vector<Verdict> out;
  out.push_back(exact_at_least("cor-3.2-" + tag, lhs1, boost::multiprecision::pow(n, 6), 2 * to_big(mom.e3)));

  const std::size_t k = table.slices.size();
  const BigInt rhs_num = boost::multiprecision::pow(n, 8);
  const BigInt rhs_den = 4 * to_big(mom.e4);
  if (k <= kDoubleSumCutoff) {
    BigInt lhs2 = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lhs2 += sumset(table.slices[i], table.slices[j], sign).size();
    out.push_back(exact_at_least("cor-3.2-" + tag + "-E4", lhs2, rhs_num, rhs_den));
  } else {
    auto rng = detail::seeded_rng(seed, a.modulus(), a.size());
    long double acc = 0;
    for (std::size_t i = 0; i < kDoubleSumSamples; ++i) {
      const auto& x = table.slices[detail::uniform_below(rng, k)];
      const auto& y = table.slices[detail::uniform_below(rng, k)];
      acc += sumset(x, y, sign).size();
    }
    const double estimate = static_cast<double>(acc / kDoubleSumSamples) * static_cast<double>(k) *
                            static_cast<double>(k);
    out.push_back(report("cor-3.2-" + tag + "-E4", estimate, to_double(rhs_num) / to_double(rhs_den)));
  }
  return out;
}

/// 8AB = F_p under |A||B| > p and B = -B or B ∩ (-B) = ∅.
inline Verdict verify_glibichuk(const DenseSet& a, const DenseSet& b) {
  detail::require_same_modulus(a, b, "verify_glibichuk");
  const u64 p = a.modulus();
  if (static_cast<u128>(a.size()) * b.size() <= p)
    throw PreconditionError("verify_glibichuk: requires |A||B| > p");
  const DenseSet neg_b = negate(b);
  if (!(neg_b == b) && !set_intersection(b, neg_b).empty())
    throw PreconditionError("verify_glibichuk: requires B = -B or B ∩ (-B) = ∅");
  const DenseSet cover = iterated_sumset(product_set(a, b), 8);
  return exact_equal("thm-1.2", BigInt(cover.size()), BigInt(p));
}

// ---------------------------------------------------------------------------
// R-invariant sets
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<Verdict> invariant_verdicts(const FourierProfile& prof, u64 q_size,
                                               const SubgroupDescriptor& r, const std::string& suffix) {
  const double q = static_cast<double>(q_size);
  const double p = static_cast<double>(r.p());
  const double d = static_cast<double>(r.order());
  std::vector<Verdict> out;
  out.push_back(certified_less("lemma-2.1" + suffix, prof.rho, prof.err, std::sqrt(q * p / d)));
  out.push_back(report("lemma-2.4" + suffix, prof.rho,
                       std::pow(q, 0.75) * std::pow(p, 0.25) * std::pow(d, -0.375)));
  return out;
}

}  // namespace detail

/// Lemma-2.1 strict bound (certified) and Lemma-2.4 ratio for one
/// R-invariant Q ⊆ F_p^*.
inline std::vector<Verdict> verify_invariant_fourier(const DenseSet& q, const SubgroupDescriptor& r,
                                                     const TwiddleTable* tw = nullptr,
                                                     const std::string& suffix = "") {
  if (q.modulus() != r.p()) throw DomainError("verify_invariant_fourier: modulus mismatch");
  if (q.empty()) throw DomainError("verify_invariant_fourier: Q must be nonempty");
  if (q.contains(0)) throw DomainError("verify_invariant_fourier: 0 ∈ Q");
  if (!is_R_invariant(q, r)) throw InvarianceError("verify_invariant_fourier: Q is not R-invariant");
  const auto cosets = coset_indices(q, r);
  FourierProfile prof;
  if (static_cast<double>(cosets.size()) * static_cast<double>(r.index()) <=
      4.0 * detail::ntt_cost(r.p())) {
    std::unique_ptr<TwiddleTable> own;
    if (tw == nullptr) {
      own = std::make_unique<TwiddleTable>(r.p());
      tw = own.get();
    }
    prof = invariant_fourier_profile(cosets, r, subgroup_fourier(r, *tw));
  } else {
    prof = fourier_profile(q, false);
  }
  return detail::invariant_verdicts(prof, q.size(), r, suffix);
}

// ---------------------------------------------------------------------------
// Basis orders
// ---------------------------------------------------------------------------

enum class BasisTarget { fp_star, fp, half };

struct BasisProfile {
  int levels = 0;                 // lR known for l in [1, levels]
  std::vector<u64> sizes;         // sizes[l] = |lR|, index 0 unused
  std::vector<bool> covers_star;  // F_p^* ⊆ lR
  bool pruned = false;            // no target reachable; sizes not computed
  std::optional<int> fp_star, fp, half;
};

namespace detail {

// Upper bound on |lR|: multisets of size l from d elements, capped at cap.
inline u64 multiset_bound(u64 d, int l, u64 cap) {
  long double b = 1;
  for (int i = 1; i <= l; ++i) {
    b = b * static_cast<long double>(d + i - 1) / i;
    if (b >= static_cast<long double>(cap)) return cap;
  }
  return static_cast<u64>(std::ceil(b));
}

}  // namespace detail

/// |lR| for l = 1..levels using the coset structure (every lR is R-invariant).
inline BasisProfile basis_profile(const SubgroupDescriptor& r, int levels, bool allow_prune = true) {
  if (levels < 1) throw DomainError("basis_profile: lmax must be >= 1");
  const u64 p = r.p();
  const u64 d = r.order();
  const u64 m = r.index();
  BasisProfile out;
  out.levels = levels;
  out.sizes.assign(levels + 1, 0);
  out.covers_star.assign(levels + 1, false);
  if (allow_prune && detail::multiset_bound(d, levels, p) * 2 < p) {
    out.pruned = true;
    return out;
  }
  const auto reps = coset_representatives(r);
  const u64 neg_one_coset = r.coset_of(p - 1);
  std::vector<std::uint8_t> cov(m, 0), next(m, 0);
  cov[0] = 1;
  u64 count = 1;
  bool zero = false;

  for (int l = 1;; ++l) {
    const u64 size = count * d + (zero ? 1 : 0);
    out.sizes[l] = size;
    out.covers_star[l] = count == m;
    if (count == m && !out.fp_star) out.fp_star = l;
    if (count == m && zero && !out.fp) out.fp = l;
    if (2 * size >= p && !out.half) out.half = l;
    if (l == levels) break;
    if (count == m && zero) {
      for (int k = l + 1; k <= levels; ++k) {
        out.sizes[k] = p;
        out.covers_star[k] = true;
      }
      break;
    }

    std::fill(next.begin(), next.end(), 0);
    u64 marked = 0;
    auto mark = [&](u64 j) {
      if (!next[j]) {
        next[j] = 1;
        ++marked;
      }
    };
    if (zero) mark(0);
    if (4 * count >= m) {
      for (u64 j = 0; j < m; ++j) {
        if (next[j]) continue;
        for (u64 y : r.powers()) {
          const u64 z = reps[j] >= y ? reps[j] - y : reps[j] + p - y;
          if (z == 0 ? zero : cov[r.coset_of(z)] != 0) {
            mark(j);
            break;
          }
        }
      }
    } else {
      for (u64 i = 0; i < m && marked < m; ++i) {
        if (!cov[i]) continue;
        for (u64 y : r.powers()) {
          u64 z = reps[i] + y;
          if (z >= p) z -= p;
          if (z != 0) mark(r.coset_of(z));
        }
      }
    }
    zero = cov[neg_one_coset] != 0;
    cov.swap(next);
    count = marked;
  }
  return out;
}

/// Smallest l <= lmax with lR covering the target, or nullopt ("exceeds lmax").
inline std::optional<int> basis_order(const SubgroupDescriptor& r, int lmax, BasisTarget target) {
  if (lmax < 1) throw DomainError("basis_order: lmax must be >= 1");
  const auto prof = basis_profile(r, lmax);
  switch (target) {
    case BasisTarget::fp_star: return prof.fp_star;
    case BasisTarget::fp: return prof.fp;
    case BasisTarget::half: return prof.half;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Stepanov-type sums over coset unions
// ---------------------------------------------------------------------------

/// max over sampled R-invariant Q of Σ_{ξ∈Q}(R∘R)(ξ) / (|R| |Q|^{2/3}), with
/// Q an R-invariant set. Candidates: the top-k cosets by (R∘R) for every k up
/// to the number of cosets in S, and `samples` uniformly random unions of k
/// cosets with |Q| <= p^3/|R|^3.
inline Verdict stepanov_ratio(const SubgroupSpectrum& ss, int samples, u64 seed) {
  const u64 p = ss.p;
  const u64 d = ss.d;
  const u64 m = ss.diff.size();
  // k * d^4 <= p^3
  const u128 p3 = static_cast<u128>(p) * p * p;
  const u128 d4 = static_cast<u128>(d) * d * d * d;
  const u64 kmax = static_cast<u64>(std::min<u128>(m, p3 / d4));

  std::vector<u64> mass;
  for (u64 c : ss.diff)
    if (c) mass.push_back(c);
  std::sort(mass.rbegin(), mass.rend());

  double best = -1, best_lhs = kNaN, best_rhs = kNaN;
  auto consider = [&](u64 lhs_units, u64 k) {
    const double lhs = static_cast<double>(d) * static_cast<double>(lhs_units);
    const double rhs = static_cast<double>(d) * std::cbrt(std::pow(static_cast<double>(k * d), 2.0));
    const double ratio = lhs / rhs;
    if (ratio > best) {
      best = ratio;
      best_lhs = lhs;
      best_rhs = rhs;
    }
  };

  u64 running = 0;
  for (u64 k = 1; k <= mass.size(); ++k) {
    running += mass[k - 1];
    consider(running, k);
  }
  if (kmax >= 1) {
    auto rng = detail::seeded_rng(seed, p, d);
    for (int s = 0; s < samples; ++s) {
      const u64 k = 1 + detail::uniform_below(rng, kmax);
      // A uniform k-subset of the m cosets, observed on the cosets carrying
      // mass: sequential selection sampling over those positions.
      u64 chosen = 0, lhs_units = 0;
      for (std::size_t t = 0; t < mass.size() && chosen < k; ++t) {
        if (detail::uniform_below(rng, m - t) < k - chosen) {
          ++chosen;
          lhs_units += mass[t];
        }
      }
      consider(lhs_units, k);
    }
  }
  Verdict v = report("thm-2.2", best_lhs, best_rhs);
  v.ratio = best < 0 ? kNaN : best;
  return v;
}

inline Verdict stepanov_ratio(const SubgroupDescriptor& r, int samples, u64 seed = 1) {
  if (samples < 1) throw DomainError("stepanov_ratio: samples must be >= 1");
  return stepanov_ratio(subgroup_spectrum(r), samples, seed);
}

// ---------------------------------------------------------------------------
// Subgroup experiment record
// ---------------------------------------------------------------------------

struct ExperimentRecord {
  u64 p = 0;
  u64 d = 0;
  u64 g = 0;
  u64 card_diff = 0;
  u64 card_sum = 0;
  u128 e2 = 0, e3 = 0, e4 = 0;
  double rho_R = 0.0;
  double rho_S = 0.0;
  double err = 0.0;
  std::optional<int> basis_fpstar, basis_fp, basis_half;
  std::vector<Verdict> verdicts;
  double wall_time_ms = 0.0;

  const Verdict* find(std::string_view claim) const {
    for (const auto& v : verdicts)
      if (v.claim_id == claim) return &v;
    return nullptr;
  }
};

struct ReportOptions {
  int lmax = 10;
  int samples = 16;
  u64 seed = 1;
  std::vector<std::string> claims;  // empty: every subgroup claim
  bool timing = false;
};

namespace detail {

// min over s ∈ S of (S∘S)(s) - |R - R_s|, checked on 0 and one
// representative per coset (both sides are constant on cosets).
inline long long slice_inequality_margin(const SubgroupDescriptor& r, const SubgroupSpectrum& ss,
                                         const std::vector<u64>& reps) {
  const u64 p = r.p();
  std::vector<u64> shifts{0};
  std::vector<u64> s_elems{0};
  for (u64 j = 0; j < ss.diff.size(); ++j) {
    if (!ss.diff[j]) continue;
    shifts.push_back(reps[j]);
    for (u64 y : r.powers()) s_elems.push_back(mul_mod(reps[j], y, p));
  }
  const DenseSet s_set = DenseSet::from_elements(p, s_elems);

  std::optional<CorrelationSpectrum> s_spec;
  if (static_cast<double>(shifts.size()) * static_cast<double>(s_set.size()) > ntt_cost(p))
    s_spec = correlation_ntt(s_set, s_set);

  std::vector<std::uint32_t> stamp(p, 0);
  std::uint32_t id = 0;
  long long margin = std::numeric_limits<long long>::max();
  std::vector<u64> slice_elems;
  for (u64 s : shifts) {
    ++id;
    slice_elems.clear();
    for (u64 y : r.powers()) {
      u64 z = y + s;
      if (z >= p) z -= p;
      if (r.contains(z)) slice_elems.push_back(y);
    }
    u64 diff_card = 0;
    for (u64 x : r.powers())
      for (u64 y : slice_elems) {
        const u64 z = x >= y ? x - y : x + p - y;
        if (stamp[z] != id) {
          stamp[z] = id;
          ++diff_card;
        }
      }
    u64 ss_val = 0;
    if (s_spec) {
      ss_val = s_spec->counts[s];
    } else {
      s_set.for_each([&](u64 y) {
        u64 z = y + s;
        if (z >= p) z -= p;
        ss_val += s_set.contains(z);
      });
    }
    margin = std::min(margin, static_cast<long long>(ss_val) - static_cast<long long>(diff_card));
  }
  return margin;
}

inline bool at_least_power(u64 d, u64 p, double exponent) {
  return std::log(static_cast<double>(d)) >= exponent * std::log(static_cast<double>(p));
}

}  // namespace detail

/// Every statistic and subgroup claim for one (p, d) cell.
inline ExperimentRecord subgroup_report(const SubgroupDescriptor& r, const ReportOptions& opts = {},
                                        const TwiddleTable* tw = nullptr) {
  const auto t0 = std::chrono::steady_clock::now();
  std::unique_ptr<TwiddleTable> own_tw;
  if (tw == nullptr) {
    own_tw = std::make_unique<TwiddleTable>(r.p());
    tw = own_tw.get();
  }
  const u64 p = r.p();
  const u64 d = r.order();
  const double pd = static_cast<double>(p);
  const double n = static_cast<double>(d);
  const double log_n = std::log2(n);
  const auto reps = coset_representatives(r);

  ExperimentRecord rec;
  rec.p = p;
  rec.d = d;
  rec.g = r.field().g();

  const auto ss = subgroup_spectrum(r);
  const auto mom = ss.moments();
  rec.e2 = mom.e2;
  rec.e3 = mom.e3;
  rec.e4 = mom.e4;
  rec.card_diff = ss.card_diff();
  rec.card_sum = ss.card_sum();

  std::vector<u64> diff_cosets, sum_cosets;
  for (u64 j = 0; j < ss.diff.size(); ++j) {
    if (ss.diff[j]) diff_cosets.push_back(j);
    if (ss.sum[j]) sum_cosets.push_back(j);
  }

  const auto rf = subgroup_fourier(r, *tw);
  const auto prof_r = invariant_fourier_profile({0}, r, rf);
  const auto prof_s = invariant_fourier_profile(diff_cosets, r, rf);
  const auto prof_s2 = invariant_fourier_profile(sum_cosets, r, rf);
  rec.rho_R = prof_r.rho;
  rec.rho_S = prof_s.rho;
  rec.err = std::max(prof_r.err, prof_s.err);

  const int levels = std::max(opts.lmax, 8);
  const bool need_sizes = detail::at_least_power(d, p, 11.0 / 23.0);
  const auto basis = basis_profile(r, levels, !need_sizes);
  auto capped = [&](const std::optional<int>& v) -> std::optional<int> {
    return v && *v <= opts.lmax ? v : std::nullopt;
  };
  rec.basis_fpstar = capped(basis.fp_star);
  rec.basis_fp = capped(basis.fp);
  rec.basis_half = capped(basis.half);

  auto& out = rec.verdicts;
  auto wanted = [&](std::string_view id) {
    return opts.claims.empty() || std::find(opts.claims.begin(), opts.claims.end(), id) != opts.claims.end();
  };
  auto emit = [&](Verdict v) {
    if (wanted(v.claim_id)) out.push_back(std::move(v));
  };

  // Exact.
  {
    u128 mass = d;
    for (u64 c : ss.diff) mass += static_cast<u128>(c) * d;
    emit(exact_equal("mass-identity", to_big(mass), BigInt(d) * d));
  }
  for (auto& v : detail::invariant_verdicts(prof_r, d, r, "")) emit(std::move(v));
  if (!diff_cosets.empty())
    for (auto& v : detail::invariant_verdicts(prof_s, d * diff_cosets.size(), r, "-diff")) emit(std::move(v));
  if (!sum_cosets.empty())
    for (auto& v : detail::invariant_verdicts(prof_s2, d * sum_cosets.size(), r, "-sum")) emit(std::move(v));
  emit(certified_less("cor-2.5", prof_r.rho, prof_r.err, std::sqrt(pd)));
  if (wanted("thm-1.1-slice")) {
    const long long margin = detail::slice_inequality_margin(r, ss, reps);
    Verdict v = exact_at_least("thm-1.1-slice", BigInt(margin), BigInt(0), BigInt(1));
    v.lhs = static_cast<double>(margin);
    v.rhs = 0.0;
    v.ratio = kNaN;
    v.margin = static_cast<double>(margin);
    out.push_back(std::move(v));
  }
  if (d * d > p && basis.levels >= 8) {
    Verdict v = exact_equal("cor-1.3", BigInt(basis.sizes[8]), BigInt(p));
    emit(std::move(v));
  }
  {
    int first = 0;
    bool ok = true;
    for (int l = 2; l <= basis.levels; ++l) {
      if (big_pow(d, 2 * l) <= big_pow(p, l + 1)) continue;
      if (!first) first = l;
      if (basis.pruned || !basis.covers_star[l]) ok = false;
    }
    if (first) {
      Verdict v{"thm-2.6", static_cast<double>(first),
                basis.fp_star ? static_cast<double>(*basis.fp_star) : kNaN};
      v.ratio = safe_ratio(v.lhs, v.rhs);
      v.pass = ok ? Outcome::holds : Outcome::fails;
      v.margin = ok ? 0.0 : -1.0;
      emit(std::move(v));
    }
  }

  // Report-only ratios.
  const double bound_25 = std::min(std::pow(pd, 0.25) * std::pow(n, 0.375), std::pow(pd, 0.125) * std::pow(n, 0.625));
  emit(report("cor-2.5-ratio", prof_r.rho, bound_25));
  emit(report("lemma-2.3", static_cast<double>(mom.e2), std::pow(n, 2.5)));
  emit(report("thm-1.1-baseline-minus", static_cast<double>(rec.card_diff), std::pow(n, 1.5)));
  emit(report("thm-1.1-baseline-plus", static_cast<double>(rec.card_sum), std::pow(n, 1.5)));
  emit(report("thm-2.7", prof_r.rho, n));
  if (d >= 2) {
    emit(report("lemma-3.3-E3", static_cast<double>(mom.e3), n * n * n * log_n));
    const u128 n4 = static_cast<u128>(d) * d * d * d;
    emit(report("lemma-3.3-E4", static_cast<double>(mom.e4 - n4), std::pow(n, 11.0 / 3.0)));
    const double first = n * std::cbrt(pd) * std::pow(log_n, -1.0 / 3.0);
    emit(report("thm-1.1-minus", static_cast<double>(rec.card_diff), first));
    emit(report("thm-1.1-plus", static_cast<double>(rec.card_sum), first));
    const double large = std::min(
        first, std::max(std::pow(n, 7.0 / 3.0) * std::pow(pd, -1.0 / 3.0) * std::pow(log_n, -2.0 / 3.0),
                        std::pow(n, 27.0 / 14.0) * std::pow(pd, -1.0 / 7.0) * std::pow(log_n, -4.0 / 7.0)));
    emit(report("thm-1.1-large-minus", static_cast<double>(rec.card_diff), large));
    emit(report("thm-1.1-large-plus", static_cast<double>(rec.card_sum), large));
    if (wanted("thm-2.2")) out.push_back(stepanov_ratio(ss, opts.samples, opts.seed));
  }
  if (rec.card_diff > 1) {
    u64 popular = 0;
    for (u64 c : ss.diff)
      if (static_cast<u128>(c) * 10 * p >= static_cast<u128>(d) * d) popular += d;
    emit(report("remark-3-popular", static_cast<double>(popular), static_cast<double>(rec.card_diff - 1)));
  }
  if (detail::at_least_power(d, p, 0.494)) {
    Verdict v = report("thm-4.1", rec.basis_fpstar ? static_cast<double>(*rec.basis_fpstar) : kNaN, 6.0);
    v.margin = 6.0 - v.lhs;
    emit(std::move(v));
  }
  if (need_sizes && basis.levels >= 4) {
    Verdict v = report("remark-4R-half", static_cast<double>(basis.sizes[4]), pd / 2);
    v.margin = v.lhs - v.rhs;
    emit(std::move(v));
  }

  if (opts.timing)
    rec.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace subsum
