#include "oracles.hpp"
#include "pfprime/modpoly.hpp"

#include <gtest/gtest.h>

using namespace pfprime;

namespace {

ModPoly P(std::uint64_t n, std::initializer_list<long long> c) { return ModPoly::from_signed(Natural(n), c); }

oracle::Poly to_oracle(const ModPoly& p) {
  oracle::Poly out;
  for (const auto& c : p.coeffs()) out.push_back(c.to_u64());
  return out;
}

ModPoly from_oracle(std::uint64_t n, const oracle::Poly& p) {
  std::vector<Natural> c;
  for (auto v : p) c.emplace_back(v);
  return ModPoly(Natural(n), std::move(c));
}

// Runs a test body once on the word-sized path and once on the big-integer path.
template <class Fn>
void both_paths(Fn fn) {
  detail::force_big_ring() = false;
  fn();
  detail::force_big_ring() = true;
  fn();
  detail::force_big_ring() = false;
}

}  // namespace

TEST(ModPoly, CanonicalForm) {
  const ModPoly p(Natural(5), {Natural(7), Natural(0), Natural(10)});
  EXPECT_EQ(p.degree(), 0);
  EXPECT_EQ(p.coeff(0), Natural(2));
  EXPECT_TRUE(ModPoly::zero(Natural(5)).is_zero());
  EXPECT_EQ(ModPoly::zero(Natural(5)).degree(), -1);
  EXPECT_THROW(ModPoly(Natural(1), {}), DomainError);
  EXPECT_THROW(ModPoly::zero(Natural(3)).lead(), DomainError);
}

TEST(ModPoly, TextRoundTrip) {
  EXPECT_EQ(P(7, {1, 0, 1}).to_string(), "7; 1,0,1");
  EXPECT_EQ(ModPoly::parse("7; 1,0,1"), P(7, {1, 0, 1}));
  EXPECT_EQ(ModPoly::parse(" 11;3, 4 ,1\n"), P(11, {3, 4, 1}));
  EXPECT_EQ(ModPoly::parse(ModPoly::zero(Natural(9)).to_string()), ModPoly::zero(Natural(9)));
  EXPECT_THROW(ModPoly::parse("7; 1,7"), DomainError);
  EXPECT_THROW(ModPoly::parse("7 1,2"), DomainError);
  EXPECT_THROW(ModPoly::parse("7; 1,,2"), DomainError);
  Rng rng(RngSeed{1});
  for (int i = 0; i < 200; ++i) {
    const Natural n = rng.uniform_between(Natural(2), Natural(1) << 90);
    const ModPoly p = random_poly(1 + i % 9, n, rng);
    ASSERT_EQ(ModPoly::parse(p.to_string()), p);
  }
}

TEST(PolyMulMod, Examples) {
  both_paths([] {
    EXPECT_EQ(poly_mul_mod(P(5, {0, 1}), P(5, {0, 1}), P(5, {1, 0, 1})), P(5, {4}));
    EXPECT_EQ(poly_mul_mod(P(5, {1, 1}), P(5, {1, 1}), P(5, {1, 0, 1})), P(5, {0, 2}));
    EXPECT_EQ(poly_mul_mod(P(7, {1, 2}), P(7, {4, 3}), P(7, {1, 1, 1})), P(7, {5, 5}));
  });
}

TEST(PolyMulMod, Preconditions) {
  EXPECT_THROW(poly_mul_mod(P(5, {1}), P(5, {1}), P(5, {1, 0, 2})), DomainError);
  EXPECT_THROW(poly_mul_mod(P(5, {1}), P(7, {1}), P(5, {1, 0, 1})), DomainError);
  EXPECT_THROW(poly_mul_mod(P(5, {0, 0, 1}), P(5, {1}), P(5, {1, 0, 1})), DomainError);
  EXPECT_THROW(poly_mul_mod(P(5, {1}), P(5, {1}), P(5, {1})), DomainError);
}

TEST(PolyPowMod, Examples) {
  both_paths([] {
    EXPECT_EQ(poly_pow_mod(P(7, {0, 1}), Natural(7), P(7, {1, 0, 1})), P(7, {0, 6}));
    EXPECT_EQ(poly_pow_mod(P(7, {3, 2}), Natural(0), P(7, {1, 0, 1})), P(7, {1}));
    EXPECT_EQ(poly_pow_mod(P(6, {1, 1}), Natural(6), P(6, {0, 0, 0, 0, 0, 0, 0, 1})), P(6, {1, 0, 3, 2, 3, 0, 1}));
  });
}

TEST(PolyMulMod, MatchesLongDivisionOracle) {
  both_paths([] {
    Rng rng(RngSeed{5});
    for (int i = 0; i < 400; ++i) {
      const std::uint64_t n = 2 + rng.uniform_below(Natural(std::uint64_t{i % 2 ? 1000u : 5'000'000'000u})).to_u64();
      const std::size_t d = 1 + i % 7;
      const ModPoly f = random_monic(d, Natural(n), rng);
      const ModPoly a = random_poly(d, Natural(n), rng), b = random_poly(d, Natural(n), rng);
      ASSERT_EQ(poly_mul_mod(a, b, f), from_oracle(n, oracle::mulmod_poly(to_oracle(a), to_oracle(b), to_oracle(f), n)));
      const std::uint64_t e = rng.uniform_below(Natural(30)).to_u64();
      ASSERT_EQ(poly_pow_mod(a, Natural(e), f), from_oracle(n, oracle::powmod_poly(to_oracle(a), e, to_oracle(f), n)));
    }
  });
}

TEST(PolyMulMod, RingLaws) {
  both_paths([] {
    Rng rng(RngSeed{6});
    for (int i = 0; i < 300; ++i) {
      const Natural n = rng.uniform_between(Natural(2), i % 3 ? Natural(97) : (Natural(1) << 100));
      const std::size_t d = 1 + i % 6;
      const ModPoly f = random_monic(d, n, rng);
      const ModPoly a = random_poly(d, n, rng), b = random_poly(d, n, rng), c = random_poly(d, n, rng);
      ASSERT_EQ(poly_mul_mod(a, b, f), poly_mul_mod(b, a, f));
      ASSERT_EQ(poly_mul_mod(poly_mul_mod(a, b, f), c, f), poly_mul_mod(a, poly_mul_mod(b, c, f), f));
      ASSERT_EQ(poly_mul_mod(a, b + c, f), poly_mul_mod(a, b, f) + poly_mul_mod(a, c, f));
      const Natural e1 = rng.uniform_below(Natural(1) << 70), e2 = rng.uniform_below(Natural(1) << 70);
      ASSERT_EQ(poly_pow_mod(a, e1 + e2, f), poly_mul_mod(poly_pow_mod(a, e1, f), poly_pow_mod(a, e2, f), f));
    }
  });
}

TEST(PolyPowMod, WordAndBigPathsAgree) {
  Rng rng(RngSeed{8});
  for (int i = 0; i < 100; ++i) {
    const Natural n = rng.uniform_between(Natural(2), Natural(~std::uint64_t{0}));
    const ModPoly f = random_monic(1 + i % 8, n, rng);
    const ModPoly a = random_poly(static_cast<std::size_t>(f.degree()), n, rng);
    const Natural e = rng.uniform_below(Natural(1) << 64);
    detail::force_big_ring() = false;
    const ModPoly word = poly_pow_mod(a, e, f);
    detail::force_big_ring() = true;
    const ModPoly big = poly_pow_mod(a, e, f);
    detail::force_big_ring() = false;
    ASSERT_EQ(word, big);
  }
}

TEST(PolyRem, ReducesArbitraryDegree) {
  EXPECT_EQ(poly_rem(P(7, {0, 0, 0, 1}), P(7, {1, 0, 1})), P(7, {0, 6}));
  EXPECT_EQ(poly_rem(P(7, {3}), P(7, {1, 0, 1})), P(7, {3}));
}

TEST(PolyCompose, MatchesHornerByHand) {
  // g = x^2 + 1 at a = x + 1 mod x^3 over Z/5: x^2 + 2x + 2
  EXPECT_EQ(poly_compose_mod(P(5, {1, 0, 1}), P(5, {1, 1}), P(5, {0, 0, 0, 1})), P(5, {2, 2, 1}));
  // f(x) vanishes at x modulo f
  const ModPoly f = P(11, {3, 4, 0, 1});
  EXPECT_TRUE(poly_compose_mod(f, P(11, {0, 1}), f).is_zero());
}

TEST(RandomPoly, DeterministicAndSupported) {
  EXPECT_EQ(random_poly(5, Natural(101), RngSeed{3}), random_poly(5, Natural(101), RngSeed{3}));
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ModPoly p = random_poly(1, Natural(2), RngSeed{s});
    ASSERT_LE(p.degree(), 0);
  }
  EXPECT_THROW(random_poly(0, Natural(5), RngSeed{0}), DomainError);
  EXPECT_THROW(random_poly(1, Natural(1), RngSeed{0}), DomainError);
}

TEST(RandomPoly, NineOutcomesAreUniform) {
  // degree < 2 over Z/3: each outcome has probability 1/9
  std::vector<int> counts(9, 0);
  const int draws = 10'000;
  for (int s = 0; s < draws; ++s) {
    const ModPoly p = random_poly(2, Natural(3), RngSeed{static_cast<std::uint64_t>(s)});
    ++counts[p.coeff(0).to_u64() + 3 * p.coeff(1).to_u64()];
  }
  const double mean = draws / 9.0, sigma = std::sqrt(draws * (1 / 9.0) * (8 / 9.0));
  for (int c : counts) EXPECT_NEAR(c, mean, 5 * sigma);
}

TEST(PolyIsUnit, Examples) {
  EXPECT_EQ(poly_is_unit_mod(P(5, {2}), P(5, {1, 0, 1})), UnitOutcome(Unit{}));
  EXPECT_EQ(poly_is_unit_mod(P(5, {0, 1}), P(5, {0, 0, 1})), UnitOutcome(NonUnit{}));
  EXPECT_EQ(poly_is_unit_mod(P(5, {}), P(5, {1, 0, 1})), UnitOutcome(NonUnit{}));
  EXPECT_EQ(poly_is_unit_mod(P(15, {1, 5}), P(15, {1, 0, 1})), UnitOutcome(FactorOfN{Natural(5)}));
  EXPECT_EQ(poly_is_unit_mod(P(15, {3}), P(15, {1, 0, 1})), UnitOutcome(FactorOfN{Natural(3)}));
}

TEST(PolyIsUnit, NonzeroIsUnitInFields) {
  // f irreducible over F_p by exhaustive trial division
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
    for (std::size_t d = 2; d <= 3; ++d) {
      for (std::uint64_t code = 0; code < oracle::ipow(p, d); ++code) {
        const auto fo = oracle::monic_from_code(code, d, p);
        if (!oracle::irreducible(fo, p)) continue;
        const ModPoly f = from_oracle(p, fo);
        for (std::uint64_t u = 1; u < oracle::ipow(p, d); ++u) {
          const ModPoly up = from_oracle(p, oracle::monic_from_code(u, d, p)) - ModPoly::monomial(Natural(p), Natural(1), d);
          ASSERT_EQ(poly_is_unit_mod(up, f), UnitOutcome(Unit{}));
        }
      }
    }
  }
}

TEST(PolyIsUnit, UnitsHaveInversesAndFactorsDivide) {
  Rng rng(RngSeed{12});
  for (int i = 0; i < 400; ++i) {
    const std::uint64_t n = 2 + rng.uniform_below(Natural(22)).to_u64();
    const ModPoly f = random_monic(1 + i % 3, Natural(n), rng);
    const ModPoly u = random_poly(static_cast<std::size_t>(f.degree()), Natural(n), rng);
    const UnitOutcome out = poly_is_unit_mod(u, f);
    // an inverse exists iff some v has u*v = 1; search exhaustively
    bool has_inverse = false;
    const auto d = static_cast<std::size_t>(f.degree());
    for (std::uint64_t code = 0; code < oracle::ipow(n, d) && !has_inverse; ++code) {
      std::vector<Natural> c;
      std::uint64_t x = code;
      for (std::size_t k = 0; k < d; ++k, x /= n) c.emplace_back(x % n);
      has_inverse = poly_mul_mod(u, ModPoly(Natural(n), c), f) == ModPoly::constant(Natural(n), Natural(1));
    }
    if (std::holds_alternative<Unit>(out)) {
      ASSERT_TRUE(has_inverse) << u << " mod " << f;
    }
    if (const auto* fac = std::get_if<FactorOfN>(&out)) {
      ASSERT_GT(fac->divisor, Natural(1));
      ASSERT_LT(fac->divisor, Natural(n));
      ASSERT_TRUE((Natural(n) % fac->divisor).is_zero());
    }
    if (oracle::is_prime(n)) {
      ASSERT_EQ(std::holds_alternative<Unit>(out), has_inverse) << u << " mod " << f;
    }
  }
}
