#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "subsum/field.hpp"
#include "subsum/oracle.hpp"
#include "subsum/verifier.hpp"

using namespace subsum;

namespace {

DenseSet random_set(std::mt19937_64& rng, u64 p, u64 lo, u64 hi) {
  const u64 target = lo + rng() % (hi - lo + 1);
  std::vector<u64> xs;
  DenseSet a(p);
  while (a.size() < std::min(target, p)) a = a.with(rng() % p);
  return a;
}

// Σ_s E(A, A_s) by quadruple loops over explicit slices.
u64 quadruple_e3(const DenseSet& a) {
  const u64 p = a.modulus();
  const auto xs = a.elements();
  u64 total = 0;
  for (u64 s = 0; s < p; ++s) {
    std::vector<u64> as;
    for (u64 y : xs)
      if (a.contains((y + s) % p)) as.push_back(y);
    for (u64 a1 : xs)
      for (u64 b1 : as)
        for (u64 a2 : xs)
          for (u64 b2 : as) total += (a1 + b1) % p == (a2 + b2) % p;
  }
  return total;
}

const Verdict& by_id(const std::vector<Verdict>& vs, const std::string& id) {
  for (const auto& v : vs)
    if (v.claim_id == id) return v;
  throw std::runtime_error("missing verdict " + id);
}

SubgroupDescriptor sub(u64 p, u64 d) { return SubgroupDescriptor(FieldContext::make(p), d); }

}  // namespace

TEST(ExactIdentities, SpecExamples) {
  const auto vs = verify_exact_identities(DenseSet::from_elements(7, {1, 2, 4}));
  ASSERT_EQ(vs.size(), 3u);
  for (const auto& v : vs) EXPECT_EQ(v.pass, Outcome::holds) << v.claim_id;
  EXPECT_EQ(by_id(vs, "lemma-3.1-E3").lhs, 33.0);
  EXPECT_EQ(by_id(vs, "lemma-3.1-E4").lhs, 87.0);

  const auto single = verify_exact_identities(DenseSet::from_elements(11, {4}));
  EXPECT_EQ(by_id(single, "lemma-3.1-E3").lhs, 1.0);
  for (const auto& v : single) EXPECT_EQ(v.pass, Outcome::holds);
  EXPECT_THROW(verify_exact_identities(DenseSet(5)), DomainError);
}

TEST(ExactIdentities, RandomCorpusAgainstQuadrupleLoop) {
  std::mt19937_64 rng(2024);
  const auto primes = primes_in_range(2, 101);
  for (int i = 0; i < 500; ++i) {
    const u64 p = primes[rng() % primes.size()];
    const auto a = random_set(rng, p, 1, 40);
    const auto vs = verify_exact_identities(a);
    for (const auto& v : vs) ASSERT_EQ(v.pass, Outcome::holds) << v.claim_id << " p=" << p;
    if (a.size() <= 12) {
      ASSERT_EQ(by_id(vs, "lemma-3.1-E3").lhs, static_cast<double>(quadruple_e3(a)));
    }
  }
}

TEST(SliceLowerBounds, SpecExamples) {
  const auto a = DenseSet::from_elements(7, {1, 2, 4});
  const auto vs = verify_slice_lower_bounds(a, Sign::minus);
  ASSERT_EQ(vs.size(), 2u);
  EXPECT_EQ(vs[0].claim_id, "cor-3.2-minus");
  EXPECT_EQ(vs[0].lhs, 18.0);
  EXPECT_NEAR(vs[0].rhs, 729.0 / 66.0, 1e-12);
  EXPECT_EQ(vs[0].pass, Outcome::holds);
  EXPECT_EQ(vs[1].claim_id, "cor-3.2-minus-E4");
  EXPECT_EQ(vs[1].pass, Outcome::holds);

  for (u64 k = 1; k <= 12; ++k) {
    std::vector<u64> ap;
    for (u64 x = 0; x <= k; ++x) ap.push_back(x);
    for (Sign s : {Sign::plus, Sign::minus})
      for (const auto& v : verify_slice_lower_bounds(DenseSet::from_elements(53, ap), s))
        EXPECT_EQ(v.pass, Outcome::holds) << v.claim_id << " k=" << k;
  }
  EXPECT_THROW(verify_slice_lower_bounds(DenseSet::from_elements(7, {3}), Sign::plus), DomainError);
}

TEST(SliceLowerBounds, RandomCorpusHolds) {
  std::mt19937_64 rng(77);
  const auto primes = primes_in_range(2, 101);
  for (int i = 0; i < 300; ++i) {
    const u64 p = primes[rng() % primes.size()];
    const auto a = random_set(rng, p, 2, 40);
    for (Sign s : {Sign::plus, Sign::minus})
      for (const auto& v : verify_slice_lower_bounds(a, s)) ASSERT_EQ(v.pass, Outcome::holds) << v.claim_id;
  }
}

TEST(SliceLowerBounds, LargeDifferenceSetIsSampledAndReportOnly) {
  std::mt19937_64 rng(5);
  const auto a = random_set(rng, 1021, 60, 60);
  ASSERT_GT(sumset(a, a, Sign::minus).size(), kDoubleSumCutoff);
  const auto vs = verify_slice_lower_bounds(a, Sign::plus, 9);
  EXPECT_EQ(vs[0].pass, Outcome::holds);
  EXPECT_EQ(vs[1].pass, Outcome::report_only);
  EXPECT_TRUE(std::isfinite(vs[1].lhs));
}

TEST(InvariantFourier, SpecExamples) {
  const auto r = sub(7, 3);
  const auto vs = verify_invariant_fourier(r.elements(), r);
  ASSERT_EQ(vs.size(), 2u);
  EXPECT_EQ(vs[0].pass, Outcome::holds);
  EXPECT_NEAR(vs[0].lhs, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(vs[0].margin, std::sqrt(7.0) - std::sqrt(2.0), 1e-9);
  EXPECT_EQ(vs[1].pass, Outcome::report_only);
  EXPECT_NEAR(vs[1].ratio, 0.5759, 1e-3);

  const auto q = verify_invariant_fourier(DenseSet::nonzero(7), r);
  EXPECT_NEAR(q[0].lhs, 1.0, 1e-12);
  EXPECT_NEAR(q[0].rhs, std::sqrt(14.0), 1e-12);
  EXPECT_EQ(q[0].pass, Outcome::holds);
}

TEST(InvariantFourier, Errors) {
  const auto r = sub(7, 3);
  EXPECT_THROW(verify_invariant_fourier(DenseSet::from_elements(7, {1, 3}), r), InvarianceError);
  EXPECT_THROW(verify_invariant_fourier(DenseSet::full(7), r), DomainError);
  EXPECT_THROW(verify_invariant_fourier(DenseSet(7), r), DomainError);
}

TEST(InvariantFourier, FastAndGenericPathsAgree) {
  // 1201 - 1 = 1200; d = 2 makes |J| m large enough for the generic path.
  const auto r = sub(1201, 2);
  const auto q = DenseSet::nonzero(1201);
  const auto vs = verify_invariant_fourier(q, r);
  EXPECT_NEAR(vs[0].lhs, 1.0, 1e-9);
  EXPECT_EQ(vs[0].pass, Outcome::holds);
}

TEST(SubgroupReport, SpecExamples) {
  const auto rec = subgroup_report(sub(7, 3));
  EXPECT_EQ(rec.e2, 15u);
  EXPECT_EQ(rec.e3, 33u);
  EXPECT_EQ(rec.e4, 87u);
  EXPECT_EQ(rec.card_diff, 7u);
  EXPECT_EQ(rec.card_sum, 6u);
  EXPECT_NEAR(rec.rho_R, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(rec.rho_S, 1.0, 1e-12);
  EXPECT_NEAR(rec.find("lemma-2.3")->ratio, 15.0 / std::pow(3.0, 2.5), 1e-12);
  EXPECT_NEAR(rec.find("lemma-2.3")->ratio, 0.962, 1e-3);
  EXPECT_EQ(rec.basis_fpstar, 2);
  EXPECT_EQ(rec.basis_fp, 3);
  EXPECT_EQ(rec.basis_half, 2);
  for (const auto& v : rec.verdicts) EXPECT_FALSE(v.failed()) << v.claim_id;

  const auto full = subgroup_report(sub(31, 30));
  EXPECT_EQ(full.card_diff, 31u);
  EXPECT_EQ(full.find("thm-1.1-slice")->pass, Outcome::holds);

  const auto one = subgroup_report(sub(31, 1));
  EXPECT_EQ(one.e2, 1u);
  EXPECT_EQ(one.e3, 1u);
  EXPECT_EQ(one.e4, 1u);
  EXPECT_EQ(one.find("lemma-2.3")->ratio, 1.0);
  EXPECT_EQ(one.find("thm-1.1-baseline-minus")->ratio, 1.0);
  EXPECT_FALSE(one.basis_fpstar.has_value());
}

TEST(SubgroupReport, ClaimFilter) {
  ReportOptions opts;
  opts.claims = {"lemma-2.3", "cor-2.5"};
  const auto rec = subgroup_report(sub(101, 10), opts);
  ASSERT_EQ(rec.verdicts.size(), 2u);
  EXPECT_EQ(rec.verdicts[0].claim_id, "cor-2.5");
  EXPECT_EQ(rec.verdicts[1].claim_id, "lemma-2.3");
}

TEST(SubgroupReport, ExactClaimsHoldAndRatiosFiniteForAllSmallSubgroups) {
  for (u64 p : primes_in_range(2, 400)) {
    auto ctx = FieldContext::make(p);
    for (u64 d : divisors(p - 1)) {
      const auto rec = subgroup_report(SubgroupDescriptor(ctx, d));
      for (const auto& v : rec.verdicts) {
        ASSERT_NE(v.pass, Outcome::fails) << v.claim_id << " p=" << p << " d=" << d;
        ASSERT_NE(v.pass, Outcome::indeterminate) << v.claim_id << " p=" << p << " d=" << d;
        if (v.pass == Outcome::report_only && v.claim_id != "thm-4.1") {
          ASSERT_TRUE(std::isfinite(v.ratio) && v.ratio > 0) << v.claim_id << " p=" << p << " d=" << d;
        }
      }
      ASSERT_GE(rec.e4, static_cast<u128>(d) * d * d * d);
    }
  }
}

TEST(SliceInequality, DirectCheckOnAllShifts) {
  // (S∘S)(s) >= |R - R_s| for every s in S, without the coset reduction.
  for (u64 p : {13ULL, 31ULL, 61ULL, 73ULL}) {
    auto ctx = FieldContext::make(p);
    for (u64 d : divisors(p - 1)) {
      const SubgroupDescriptor r(ctx, d);
      const auto& set = r.elements();
      const auto s = sumset(set, set, Sign::minus);
      const auto ss = correlation(s, s);
      long long worst = 1 << 30;
      s.for_each([&](u64 x) {
        const auto rs = slice(set, x);
        const long long diff = rs.empty() ? 0 : static_cast<long long>(sumset(set, rs, Sign::minus).size());
        worst = std::min(worst, static_cast<long long>(ss.counts[x]) - diff);
      });
      const auto rec = subgroup_report(r);
      ASSERT_EQ(rec.find("thm-1.1-slice")->margin, static_cast<double>(worst)) << p << "," << d;
    }
  }
}

TEST(Stepanov, SpecExamples) {
  const auto r = sub(7, 3);
  const auto v = stepanov_ratio(r, 8, 1);
  EXPECT_EQ(v.pass, Outcome::report_only);
  // One coset {3,5,6}: 3 / (3 * 3^{2/3}) ≈ 0.48. Both cosets (all mass):
  // |R|^2 - |R| = 6 over 3 * 6^{2/3}, the maximum.
  const double one = 3.0 / (3.0 * std::cbrt(9.0));
  const double all = 6.0 / (3.0 * std::cbrt(36.0));
  EXPECT_NEAR(one, 0.48, 0.005);
  EXPECT_NEAR(v.ratio, all, 1e-12);
  EXPECT_NEAR(v.lhs, 6.0, 1e-12);
  EXPECT_THROW(stepanov_ratio(r, 0, 1), DomainError);
}

TEST(Stepanov, DeterministicAndBoundedByBruteForceMaximum) {
  for (u64 p : {31ULL, 61ULL, 101ULL}) {
    auto ctx = FieldContext::make(p);
    for (u64 d : divisors(p - 1)) {
      if (d == 1) continue;
      const SubgroupDescriptor r(ctx, d);
      const auto a = stepanov_ratio(r, 32, 7);
      const auto b = stepanov_ratio(r, 32, 7);
      ASSERT_EQ(a.ratio, b.ratio);
      // Over all coset unions of k cosets, the best is the top-k by mass.
      const auto ss = subgroup_spectrum(r);
      std::vector<u64> mass(ss.diff.begin(), ss.diff.end());
      std::sort(mass.rbegin(), mass.rend());
      double best = 0;
      u64 run = 0;
      for (u64 k = 1; k <= mass.size(); ++k) {
        run += mass[k - 1];
        best = std::max(best, static_cast<double>(run) * d / (d * std::cbrt(std::pow(double(k * d), 2))));
      }
      ASSERT_LE(a.ratio, best * (1 + 1e-12));
      ASSERT_GT(a.ratio, 0);
    }
  }
}

TEST(BasisOrder, SpecExamples) {
  EXPECT_EQ(basis_order(sub(7, 3), 10, BasisTarget::fp_star), 2);
  EXPECT_EQ(basis_order(sub(7, 6), 10, BasisTarget::fp_star), 1);
  EXPECT_FALSE(basis_order(sub(7, 1), 10, BasisTarget::fp_star).has_value());
  EXPECT_THROW(basis_order(sub(7, 3), 0, BasisTarget::fp), DomainError);
}

TEST(BasisOrder, MatchesIteratedSumsets) {
  for (u64 p : primes_in_range(2, 250)) {
    auto ctx = FieldContext::make(p);
    for (u64 d : divisors(p - 1)) {
      const SubgroupDescriptor r(ctx, d);
      const auto prof = basis_profile(r, 10, false);
      std::optional<int> star, fp, half;
      DenseSet cur = r.elements();
      for (int l = 1; l <= 10; ++l) {
        if (l > 1) cur = sumset(cur, r.elements(), Sign::plus);
        ASSERT_EQ(prof.sizes[l], cur.size()) << p << "," << d << " l=" << l;
        const bool covers = DenseSet::nonzero(p).is_subset_of(cur);
        ASSERT_EQ(prof.covers_star[l], covers);
        if (covers && !star) star = l;
        if (cur.size() == p && !fp) fp = l;
        if (2 * cur.size() >= p && !half) half = l;
      }
      ASSERT_EQ(basis_order(r, 10, BasisTarget::fp_star), star) << p << "," << d;
      ASSERT_EQ(basis_order(r, 10, BasisTarget::fp), fp) << p << "," << d;
      ASSERT_EQ(basis_order(r, 10, BasisTarget::half), half) << p << "," << d;
    }
  }
}

TEST(BasisOrder, MonotoneUnderSubgroupInclusion) {
  for (u64 p : primes_in_range(3, 600)) {
    auto ctx = FieldContext::make(p);
    const auto ds = divisors(p - 1);
    std::map<u64, std::optional<int>> order;
    for (u64 d : ds) order[d] = basis_order(SubgroupDescriptor(ctx, d), 10, BasisTarget::fp_star);
    for (u64 d : ds)
      for (u64 e : ds)
        if (e % d == 0 && order[d]) {
          ASSERT_TRUE(order[e] && *order[e] <= *order[d]) << p << ": " << d << " | " << e;
        }
  }
}

TEST(Glibichuk, SpecExamples) {
  const auto v = verify_glibichuk(DenseSet::from_elements(5, {0, 1, 2}), DenseSet::from_elements(5, {1, 4}));
  EXPECT_EQ(v.pass, Outcome::holds);
  EXPECT_EQ(verify_glibichuk(DenseSet::full(11), DenseSet::full(11)).pass, Outcome::holds);
  EXPECT_THROW(verify_glibichuk(DenseSet::from_elements(5, {0, 1}), DenseSet::from_elements(5, {1})),
               PreconditionError);
  // |A||B| = 9 > 7 but B = {1,2,6} is neither symmetric nor disjoint from -B.
  EXPECT_THROW(verify_glibichuk(DenseSet::from_elements(7, {0, 1, 2}), DenseSet::from_elements(7, {1, 2, 6})),
               PreconditionError);
}

TEST(Glibichuk, AntisymmetricBAlsoAdmissible) {
  // B ∩ (-B) = ∅
  const auto v = verify_glibichuk(DenseSet::from_elements(11, {1, 2, 3, 4}), DenseSet::from_elements(11, {1, 2, 3}));
  EXPECT_EQ(v.pass, Outcome::holds);
}

TEST(VerdictBuilders, CertifiedLessIsTriState) {
  EXPECT_EQ(certified_less("x", 1.0, 0.1, 2.0).pass, Outcome::holds);
  EXPECT_EQ(certified_less("x", 3.0, 0.1, 2.0).pass, Outcome::fails);
  EXPECT_EQ(certified_less("x", 1.95, 0.1, 2.0).pass, Outcome::indeterminate);
  EXPECT_EQ(exact_at_least("x", 4, 7, 2).pass, Outcome::holds);
  EXPECT_EQ(exact_at_least("x", 3, 7, 2).pass, Outcome::fails);
  EXPECT_EQ(exact_at_least("x", 3, 7, 1).pass, Outcome::fails);
  EXPECT_EQ(outcome_from_string("indeterminate-numeric"), Outcome::indeterminate);
  EXPECT_THROW(outcome_from_string("maybe"), CorruptionError);
}
