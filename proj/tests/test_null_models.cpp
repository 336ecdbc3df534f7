#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "primedyn/block_census.hpp"
#include "primedyn/null_models.hpp"
#include "primedyn/rng.hpp"

namespace primedyn {
namespace {

TEST(Rng, SplitMixReferenceValue) {
  SplitMix64 sm(0);
  EXPECT_EQ(sm.next(), 0xe220a8397b1dcdafULL);
}

TEST(Rng, UniformAndBelowRanges) {
  Xoshiro256 rng(3);
  std::array<int, 5> hist{};
  for (int i = 0; i < 50'000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ++hist[rng.below(5)];
  }
  for (int h : hist) EXPECT_NEAR(h, 10'000, 400);
}

TEST(NullModels, Type1UniformFrequencies) {
  const auto s = generate_symbol_null({nullspec::Type1Uniform{3}, 300'000, 11});
  EXPECT_EQ(s.alphabet_size, 3);
  for (double f : symbol_frequencies(s)) EXPECT_NEAR(f, 1.0 / 3, 0.005);
}

TEST(NullModels, Type1WeightedFrequencies) {
  const auto s = generate_symbol_null({nullspec::Type1Weighted{{0.2, 0.5, 0.3}}, 300'000, 5});
  const auto f = symbol_frequencies(s);
  EXPECT_NEAR(f[0], 0.2, 0.005);
  EXPECT_NEAR(f[1], 0.5, 0.005);
  EXPECT_NEAR(f[2], 0.3, 0.005);
  EXPECT_THROW(generate_symbol_null({nullspec::Type1Weighted{{0.2, 0.2}}, 10, 5}), DomainError);
  EXPECT_THROW(generate_symbol_null({nullspec::Type1Weighted{{1.0}}, 10, 5}), DomainError);
  EXPECT_THROW(generate_symbol_null({nullspec::Type1Weighted{{-0.5, 1.5}}, 10, 5}), DomainError);
}

TEST(NullModels, Type2HasOnlyConsistentPairs) {
  const auto s = generate_symbol_null({nullspec::Type2Transition{0.5}, 100'000, 2});
  EXPECT_EQ(s.size(), 100'000u);
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    ASSERT_EQ(s.symbols[i] & 1, s.symbols[i + 1] >> 1) << i;
  for (int m = 1; m <= 8; ++m)
    EXPECT_EQ(count_blocks(s, m).distinct(), type2_counts(m).admissible) << m;
}

TEST(NullModels, Type2CountFormulas) {
  EXPECT_EQ(type2_counts(1).admissible, 4u);
  EXPECT_EQ(type2_counts(1).forbidden, 0u);
  EXPECT_EQ(type2_counts(3).admissible, 16u);
  EXPECT_EQ(type2_counts(3).forbidden, 48u);
  for (int m = 1; m <= 12; ++m)
    EXPECT_EQ(type2_counts(m).admissible + type2_counts(m).forbidden, std::uint64_t{1} << (2 * m));
  EXPECT_TRUE(type2_recursion_check(31));
  EXPECT_THROW(type2_counts(32), DomainError);
}

TEST(NullModels, CramerDensity) {
  const auto t = generate_cramer(2'000'000, 17);
  EXPECT_EQ(t.upper_bound, 2'000'000u);
  for (auto x : t.primes) ASSERT_EQ(x % 2, 1u);
  // Expected count is sum over odd x of 2/ln x, close to Li(xmax).
  const double expected = logarithmic_integral(2e6);
  EXPECT_NEAR(static_cast<double>(t.count()), expected, 0.02 * expected);
  EXPECT_TRUE(std::is_sorted(t.primes.begin(), t.primes.end()));
  EXPECT_THROW(generate_cramer(4, 1), DomainError);
}

TEST(NullModels, SeedDeterminism) {
  const NullSpec spec{nullspec::Type2Transition{0.4}, 5000, 99};
  EXPECT_EQ(generate_symbol_null(spec).symbols, generate_symbol_null(spec).symbols);
  NullSpec other = spec;
  other.seed = 100;
  EXPECT_NE(generate_symbol_null(spec).symbols, generate_symbol_null(other).symbols);
  EXPECT_EQ(generate_cramer(100'000, 4).primes, generate_cramer(100'000, 4).primes);
  const auto out = generate_null({nullspec::Type3Cramer{1000}, 1, 4});
  EXPECT_TRUE(std::holds_alternative<PrimeTable>(out));
}

}  // namespace
}  // namespace primedyn
