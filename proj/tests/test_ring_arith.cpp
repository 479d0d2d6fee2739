#include "oracles.hpp"
#include "pfprime/counters.hpp"
#include "pfprime/ring_arith.hpp"
#include "pfprime/rng.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace pfprime;

TEST(Natural, ParsesAndPrints) {
  EXPECT_EQ(Natural::parse("0").str(), "0");
  EXPECT_EQ(Natural::parse("340282366920938463463374607431768211457").str(),
            "340282366920938463463374607431768211457");
  EXPECT_THROW(Natural::parse(""), DomainError);
  EXPECT_THROW(Natural::parse("-3"), DomainError);
  EXPECT_THROW(Natural::parse("12a"), DomainError);
  EXPECT_THROW(Natural(-1), DomainError);
}

TEST(Natural, ArithmeticGuards) {
  EXPECT_THROW(Natural(3) - Natural(4), DomainError);
  EXPECT_THROW(Natural(3) / Natural(0), DomainError);
  EXPECT_THROW(Natural(3) % Natural(0), DomainError);
  EXPECT_EQ(Natural(17) % Natural(5), Natural(2));
  EXPECT_EQ((Natural(1) << 70) >> 69, Natural(2));
  EXPECT_FALSE((Natural(1) << 64).fits_u64());
  EXPECT_THROW((Natural(1) << 64).to_u64(), DomainError);
}

TEST(ModPow, Examples) {
  EXPECT_EQ(mod_pow(Natural(2), Natural(10), Natural(1000)), Natural(24));
  EXPECT_EQ(mod_pow(Natural(123), Natural(0), Natural(7)), Natural(1));
  EXPECT_EQ(mod_pow(Natural(2), Natural(340), Natural(341)), Natural(1));
  EXPECT_THROW(mod_pow(Natural(2), Natural(3), Natural(1)), DomainError);
  EXPECT_THROW(mod_pow(Natural(2), Natural(3), Natural(0)), DomainError);
}

TEST(ModPow, MatchesRepeatedMultiplication) {
  for (std::uint64_t m = 2; m < 60; ++m)
    for (std::uint64_t a = 0; a < 70; a += 3)
      for (std::uint64_t e = 0; e < 40; ++e)
        ASSERT_EQ(mod_pow(Natural(a), Natural(e), Natural(m)).to_u64(), oracle::naive_pow(a, e, m)) << a << "^" << e << " mod " << m;
}

TEST(ModPow, ExponentsAddAcrossBothPaths) {
  Rng rng(RngSeed{7});
  const Natural big = (Natural(1) << 127) - Natural(1);  // Mersenne prime
  for (int i = 0; i < 200; ++i) {
    const Natural m = i % 2 ? rng.uniform_between(Natural(2), big) : rng.uniform_between(Natural(2), Natural(1'000'000));
    const Natural a = rng.uniform_below(m);
    const Natural e1 = rng.uniform_below(Natural(1) << 80);
    const Natural e2 = rng.uniform_below(Natural(1) << 80);
    ASSERT_EQ(mod_pow(a, e1 + e2, m), mod_pow(a, e1, m) * mod_pow(a, e2, m) % m);
  }
  EXPECT_EQ(mod_pow(Natural(3), big - Natural(1), big), Natural(1));
}

TEST(ModPow, MultiplicationCountWithinTwiceBitLength) {
  Rng rng(RngSeed{11});
  for (int i = 0; i < 300; ++i) {
    const Natural m = rng.uniform_between(Natural(2), Natural(1) << (i % 3 == 0 ? 200 : 40));
    const Natural e = rng.uniform_below(Natural(1) << (1 + i % 150));
    CountingScope scope;
    mod_pow(rng.uniform_below(m), e, m);
    ASSERT_LE(scope.counts().modular_mults, 2 * e.bit_length());
  }
}

TEST(Counters, DisabledOutsideScopeAndNested) {
  mod_pow(Natural(3), Natural(1000), Natural(101));
  CountingScope outer;
  mod_pow(Natural(3), Natural(8), Natural(101));  // 3 squarings
  {
    CountingScope inner;
    mod_pow(Natural(3), Natural(2), Natural(101));
    EXPECT_EQ(inner.counts().modular_mults, 1u);
  }
  EXPECT_EQ(outer.counts().modular_mults, 4u);
}

TEST(Gcd, ExamplesAndOracle) {
  EXPECT_EQ(gcd(Natural(12), Natural(18)), Natural(6));
  EXPECT_EQ(gcd(Natural(1), Natural(999)), Natural(1));
  EXPECT_EQ(gcd(Natural(85), Natural(340)), Natural(85));
  EXPECT_EQ(gcd(Natural(0), Natural(5)), Natural(5));
  EXPECT_THROW(gcd(Natural(0), Natural(0)), DomainError);
  for (std::uint64_t a = 0; a < 80; ++a)
    for (std::uint64_t b = 1; b < 80; ++b) ASSERT_EQ(gcd(Natural(a), Natural(b)).to_u64(), std::gcd(a, b));
}

TEST(TryInvert, Examples) {
  EXPECT_EQ(std::get<Inverse>(try_invert(Natural(3), Natural(10))).value, Natural(7));
  EXPECT_EQ(std::get<FactorFound>(try_invert(Natural(5), Natural(15))).divisor, Natural(5));
  EXPECT_EQ(std::get<Inverse>(try_invert(Natural(2), Natural(341))).value, Natural(171));
  EXPECT_THROW(try_invert(Natural(0), Natural(10)), DomainError);
  EXPECT_THROW(try_invert(Natural(10), Natural(10)), DomainError);
}

TEST(TryInvert, OutcomesAreCertified) {
  for (std::uint64_t m = 2; m < 200; ++m) {
    for (std::uint64_t a = 1; a < m; ++a) {
      const auto out = try_invert(Natural(a), Natural(m));
      if (const auto* inv = std::get_if<Inverse>(&out)) {
        ASSERT_EQ(a * inv->value.to_u64() % m, 1u);
      } else {
        const auto d = std::get<FactorFound>(out).divisor.to_u64();
        ASSERT_GT(d, 1u);
        ASSERT_LT(d, m);
        ASSERT_EQ(m % d, 0u);
        ASSERT_NE(std::gcd(a, m), 1u);
      }
    }
  }
}

TEST(DecomposeTwoPower, ExamplesAndRoundTrip) {
  EXPECT_EQ(decompose_two_power(Natural(340)).s, 2u);
  EXPECT_EQ(decompose_two_power(Natural(340)).t, Natural(85));
  EXPECT_EQ(decompose_two_power(Natural(1)).s, 0u);
  EXPECT_EQ(decompose_two_power(Natural(8)).s, 3u);
  EXPECT_EQ(decompose_two_power(Natural(8)).t, Natural(1));
  EXPECT_THROW(decompose_two_power(Natural(0)), DomainError);
  Rng rng(RngSeed{3});
  for (int i = 0; i < 500; ++i) {
    const Natural n = rng.uniform_between(Natural(1), Natural(1) << 100);
    const auto [s, t] = decompose_two_power(n);
    ASSERT_TRUE(t.is_odd());
    ASSERT_EQ(t << s, n);
  }
}

TEST(FloorLog2, Examples) {
  EXPECT_EQ(floor_log2(Natural(1)), 0u);
  EXPECT_EQ(floor_log2(Natural(25)), 4u);
  EXPECT_EQ(floor_log2(Natural(1024)), 10u);
  EXPECT_EQ(floor_log2(Natural(1023)), 9u);
  EXPECT_THROW(floor_log2(Natural(0)), DomainError);
}

TEST(SmallPrime, AgreesWithSieve) {
  const auto sieve = oracle::sieve(200'000);
  for (std::uint64_t n = 0; n <= 200'000; ++n) ASSERT_EQ(is_small_prime(Natural(n)), sieve[n]) << n;
  for (std::uint64_t carmichael : {561u, 1105u, 1729u, 2465u, 2821u, 6601u, 8911u, 3215031751u})
    EXPECT_FALSE(is_small_prime(Natural(carmichael)));
  EXPECT_TRUE(is_small_prime((Natural(1) << 61) - Natural(1)));
}

TEST(Rng, SeedParsing) {
  EXPECT_EQ(RngSeed::parse_hex("00").value, 0u);
  EXPECT_EQ(RngSeed::parse_hex("0xff").value, 255u);
  EXPECT_EQ(RngSeed::parse_hex("DEADbeef").value, 0xdeadbeefu);
  EXPECT_THROW(RngSeed::parse_hex(""), DomainError);
  EXPECT_THROW(RngSeed::parse_hex("xyz"), DomainError);
  EXPECT_THROW(RngSeed::parse_hex("11112222333344445"), DomainError);
  EXPECT_EQ(RngSeed::parse_hex(RngSeed{0xabc}.hex()).value, 0xabcu);
}

TEST(Rng, DeterministicAndInRange) {
  Rng a(RngSeed{42}), b(RngSeed{42});
  const Natural bound = (Natural(1) << 130) + Natural(5);
  for (int i = 0; i < 100; ++i) {
    const Natural x = a.uniform_below(bound);
    ASSERT_EQ(x, b.uniform_below(bound));
    ASSERT_LT(x, bound);
  }
  EXPECT_EQ(a.uniform_below(Natural(1)), Natural(0));
  EXPECT_THROW(a.uniform_below(Natural(0)), DomainError);
  EXPECT_THROW(a.uniform_between(Natural(5), Natural(4)), DomainError);
}

TEST(Rng, UniformBelowIsUniform) {
  // 6 buckets over a bound that is not a power of two; 5 sigma tolerance
  Rng rng(RngSeed{9});
  const int draws = 60'000;
  std::vector<int> counts(6, 0);
  for (int i = 0; i < draws; ++i) ++counts[rng.uniform_below(Natural(6)).to_u64()];
  const double mean = draws / 6.0, sigma = std::sqrt(draws * (1 / 6.0) * (5 / 6.0));
  for (int c : counts) EXPECT_NEAR(c, mean, 5 * sigma);
}
