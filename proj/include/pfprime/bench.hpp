#pragma once

#include "pfprime/counters.hpp"
#include "pfprime/pipeline.hpp"
#include "pfprime/primality.hpp"

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace pfprime {

/// time_ns / |epsilon_log2|.
inline Rational compute_ratio(const Natural& time_ns, const Rational& epsilon_log2) {
  if (epsilon_log2 >= 0) throw DomainError("compute_ratio: epsilon_log2 must be negative");
  return Rational(time_ns.raw()) / -epsilon_log2;
}

/// log2 of the per-round Miller-Rabin failure bound 1/4.
inline Rational epsilon_log2_mr() { return Rational(-2); }

/// log2 of 1 / (2^((r-1) d) * N^(d-r)) with log2 N replaced by `log2_n`.
inline Rational epsilon_log2_ab(std::uint64_t degree, std::uint64_t r, std::uint64_t log2_n) {
  const BigInt d = degree, rr = r, l = log2_n;
  return Rational(-((rr - 1) * d + (d - rr) * l));
}

struct BenchRow {
  std::uint64_t bits = 0;
  std::uint64_t degree = 0;
  std::uint64_t trials = 0;
  Natural t_mr_ns;  // mean wall time of one Miller-Rabin round
  Natural t_ab_ns;  // mean wall time of one combined test
  Rational eps_mr_log2;
  Rational eps_ab_log2;
  Rational r_mr;
  Rational r_ab;
  OpCounts mr_counts;  // totals over all trials
  OpCounts ab_counts;
};

struct BenchConfig {
  std::vector<std::uint64_t> bits{32, 64, 128};
  Rational c = 1;
  std::uint64_t trials = 3;
  RngSeed seed;
};

/// Random prime with exactly `bits` bits.
inline Natural random_prime_bits(std::uint64_t bits, Rng& rng) {
  if (bits < 2) throw DomainError("random_prime_bits: need at least 2 bits");
  const Natural lo = Natural(1) << (bits - 1);
  const Natural hi = (Natural(1) << bits) - Natural(1);
  for (;;) {
    Natural n = rng.uniform_between(lo, hi);
    if (n.is_even()) ++n;
    if (n <= hi && is_small_prime(n)) return n;
  }
}

/// Times single Miller-Rabin rounds and full combined tests (deg f =
/// max(2, ceil(floor(log2 N)^c)), random monic f) on random primes, so no
/// run stops early. Ratios use r = 2 for the combined-test bound.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  using clock = std::chrono::steady_clock;
  if (cfg.trials < 1) throw DomainError("bench: trials must be >= 1");
  Rng rng(cfg.seed);
  std::vector<BenchRow> rows;
  for (std::uint64_t bits : cfg.bits) {
    BenchRow row;
    row.bits = bits;
    row.trials = cfg.trials;
    std::uint64_t mr_ns = 0, ab_ns = 0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
      const Natural n = random_prime_bits(bits, rng);
      const std::uint64_t log2_n = floor_log2(n);
      row.degree = std::max<std::uint64_t>(2, ceil_power(log2_n, cfg.c));
      const ModPoly f = random_monic(row.degree, n, rng);

      {
        CountingScope scope;
        const auto start = clock::now();
        miller_rabin(n, 1, rng);
        mr_ns += static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - start).count());
        row.mr_counts.modular_mults += scope.counts().modular_mults;
      }
      {
        CountingScope scope;
        const auto start = clock::now();
        combined_test(n, f, rng);
        ab_ns += static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - start).count());
        row.ab_counts.modular_mults += scope.counts().modular_mults;
        row.ab_counts.ring_mults += scope.counts().ring_mults;
      }
      row.eps_ab_log2 = epsilon_log2_ab(row.degree, 2, log2_n);
    }
    row.t_mr_ns = Natural(std::max<std::uint64_t>(1, mr_ns / cfg.trials));
    row.t_ab_ns = Natural(std::max<std::uint64_t>(1, ab_ns / cfg.trials));
    row.eps_mr_log2 = epsilon_log2_mr();
    row.r_mr = compute_ratio(row.t_mr_ns, row.eps_mr_log2);
    row.r_ab = compute_ratio(row.t_ab_ns, row.eps_ab_log2);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string decimal(const Rational& q, int places = 3) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(places) << static_cast<long double>(q);
  return os.str();
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "bits,T_mr,T_ab,R_mr,R_ab\n";
  for (const auto& r : rows) {
    os << r.bits << ',' << r.t_mr_ns << ',' << r.t_ab_ns << ',' << decimal(r.r_mr) << ',' << decimal(r.r_ab) << '\n';
  }
  return os.str();
}

}  // namespace pfprime
