#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "subsum/dense_set.hpp"
#include "subsum/field.hpp"
#include "subsum/oracle.hpp"

using namespace subsum;

namespace {

DenseSet random_set(std::mt19937_64& rng, u64 p, double density) {
  std::vector<u64> xs;
  std::bernoulli_distribution coin(density);
  for (u64 x = 0; x < p; ++x)
    if (coin(rng)) xs.push_back(x);
  if (xs.empty()) xs.push_back(rng() % p);
  return DenseSet::from_elements(p, xs);
}

std::set<u64> pairwise(const DenseSet& a, const DenseSet& b, Sign s) {
  std::set<u64> out;
  const u64 p = a.modulus();
  for (u64 x : a.elements())
    for (u64 y : b.elements()) out.insert(s == Sign::plus ? (x + y) % p : (x + p - y) % p);
  return out;
}

std::vector<u64> as_vector(const std::set<u64>& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(DenseSet, Basics) {
  auto a = DenseSet::from_elements(130, {0, 64, 129, 64});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_TRUE(a.contains(129));
  EXPECT_FALSE(a.contains(1));
  EXPECT_EQ(a.elements(), (std::vector<u64>{0, 64, 129}));
  EXPECT_EQ(*a.min(), 0u);
  EXPECT_THROW(DenseSet::from_elements(7, {7}), DomainError);
  EXPECT_EQ(DenseSet::full(70).size(), 70u);
  EXPECT_EQ(DenseSet::nonzero(70).size(), 69u);
  EXPECT_TRUE(DenseSet(5).empty());
  EXPECT_FALSE(DenseSet(5).min().has_value());
  const auto masked = DenseSet::from_words(3, {~u64{0}});
  EXPECT_EQ(masked.size(), 3u);
  EXPECT_TRUE(a.with(5).contains(5));
  EXPECT_FALSE(a.without(64).contains(64));
  EXPECT_TRUE(DenseSet::from_elements(130, {64}).is_subset_of(a));
}

TEST(Sumset, SpecExamples) {
  const auto r = DenseSet::from_elements(7, {1, 2, 4});
  EXPECT_EQ(sumset(r, r, Sign::minus), DenseSet::full(7));
  EXPECT_EQ(sumset(r, r, Sign::plus), DenseSet::nonzero(7));
  const auto b = DenseSet::from_elements(7, {3, 5});
  EXPECT_EQ(sumset(DenseSet::from_elements(7, {0}), b, Sign::plus), b);
}

TEST(Sumset, Errors) {
  const auto a = DenseSet::from_elements(7, {1});
  EXPECT_THROW(sumset(a, DenseSet::from_elements(11, {1}), Sign::plus), DomainError);
  EXPECT_THROW(sumset(a, DenseSet(7), Sign::plus), DomainError);
  EXPECT_THROW(sumset(DenseSet(7), a, Sign::minus), DomainError);
}

TEST(Sumset, AllKernelsMatchPairEnumeration) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 400; ++i) {
    const u64 p = std::vector<u64>{2, 3, 5, 61, 67, 127, 131, 1009, 4099}[rng() % 9];
    const double da = std::vector<double>{0.01, 0.1, 0.5, 0.9}[rng() % 4];
    const double db = std::vector<double>{0.01, 0.1, 0.5, 0.9}[rng() % 4];
    const auto a = random_set(rng, p, da);
    const auto b = random_set(rng, p, db);
    for (Sign s : {Sign::plus, Sign::minus}) {
      const auto expect = as_vector(pairwise(a, b, s));
      const auto bb = s == Sign::plus ? b : negate(b);
      ASSERT_EQ(sumset(a, b, s).elements(), expect);
      ASSERT_EQ(detail::sumset_pairs(a, bb).elements(), expect);
      ASSERT_EQ(detail::sumset_shift_or(a, bb).elements(), expect);
      ASSERT_EQ(detail::sumset_convolution(a, bb).elements(), expect);
    }
  }
}

TEST(Sumset, MatchesNaiveOracleOn500Instances) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    static const auto primes = primes_in_range(2, 600);
    const u64 p = primes[rng() % primes.size()];
    const auto a = random_set(rng, p, 0.05 + 0.5 * (rng() % 100) / 100.0);
    const auto b = random_set(rng, p, 0.05 + 0.5 * (rng() % 100) / 100.0);
    const Sign s = rng() % 2 ? Sign::plus : Sign::minus;
    ASSERT_EQ(sumset(a, b, s), oracle::naive_sumset(a, b, s));
  }
}

TEST(IteratedSumset, SpecExamples) {
  const auto r = DenseSet::from_elements(7, {1, 2, 4});
  EXPECT_EQ(iterated_sumset(r, 2), DenseSet::nonzero(7));
  EXPECT_EQ(iterated_sumset(r, 1), r);
  EXPECT_EQ(iterated_sumset(DenseSet::from_elements(7, {1}), 3), DenseSet::from_elements(7, {3}));
  EXPECT_THROW(iterated_sumset(r, 0), DomainError);
}

TEST(IteratedSumset, MatchesRepeatedPairSums) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 60; ++i) {
    const u64 p = 97;
    const auto a = random_set(rng, p, 0.04);
    const auto xs = a.elements();
    std::set<u64> cur(xs.begin(), xs.end());
    for (int l = 2; l <= 5; ++l) {
      std::set<u64> next;
      for (u64 x : cur)
        for (u64 y : xs) next.insert((x + y) % p);
      cur = next;
      ASSERT_EQ(iterated_sumset(a, l).elements(), as_vector(cur));
    }
  }
}

TEST(Slice, SpecExamples) {
  const auto a = DenseSet::from_elements(7, {1, 2, 4});
  EXPECT_EQ(slice(a, 1), DenseSet::from_elements(7, {1}));
  EXPECT_EQ(slice(a, 0), a);
  EXPECT_TRUE(slice(DenseSet::from_elements(5, {0, 1}), 3).empty());
}

TEST(Slice, SizeIsCorrelationCount) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const u64 p = 101;
    const auto a = random_set(rng, p, 0.3);
    for (u64 s = 0; s < p; ++s) {
      u64 count = 0;
      for (u64 y : a.elements()) count += a.contains((y + s) % p);
      ASSERT_EQ(slice(a, s).size(), count);
    }
  }
}

TEST(Dilate, SpecExamples) {
  const auto r = DenseSet::from_elements(7, {1, 2, 4});
  EXPECT_EQ(dilate(r, 2), r);
  const auto b = DenseSet::from_elements(7, {1, 3});
  EXPECT_EQ(dilate(b, 1), b);
  EXPECT_EQ(dilate(b, 3), DenseSet::from_elements(7, {2, 3}));
  EXPECT_THROW(dilate(b, 0), DomainError);
  EXPECT_THROW(dilate(b, 7), DomainError);
}

TEST(ProductSet, SpecExamples) {
  const auto a = DenseSet::from_elements(5, {0, 1, 2});
  const auto b = DenseSet::from_elements(5, {1, 4});
  EXPECT_EQ(product_set(a, b), DenseSet::full(5));
  EXPECT_EQ(product_set(DenseSet::from_elements(5, {1}), b), b);
  EXPECT_EQ(product_set(DenseSet::from_elements(5, {0}), b), DenseSet::from_elements(5, {0}));
  EXPECT_THROW(product_set(a, DenseSet::from_elements(7, {1})), DomainError);
}

TEST(ProductSet, MatchesPairProducts) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const u64 p = 211;
    const auto a = random_set(rng, p, 0.1);
    const auto b = random_set(rng, p, 0.1);
    std::set<u64> expect;
    for (u64 x : a.elements())
      for (u64 y : b.elements()) expect.insert(x * y % p);
    ASSERT_EQ(product_set(a, b).elements(), as_vector(expect));
  }
}

TEST(SetAlgebra, TranslateNegateUnionIntersection) {
  const auto a = DenseSet::from_elements(11, {0, 3, 10});
  EXPECT_EQ(translate(a, 2), DenseSet::from_elements(11, {2, 5, 1}));
  EXPECT_EQ(negate(a), DenseSet::from_elements(11, {0, 8, 1}));
  const auto b = DenseSet::from_elements(11, {3, 4});
  EXPECT_EQ(set_union(a, b), DenseSet::from_elements(11, {0, 3, 4, 10}));
  EXPECT_EQ(set_intersection(a, b), DenseSet::from_elements(11, {3}));
}

