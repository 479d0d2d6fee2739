#pragma once

#include "pfprime/natural.hpp"
#include "pfprime/ring_arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pfprime {

/// (r, q): r prime not dividing N, q prime dividing r-1, and N^((r-1)/q)
/// of multiplicative order exactly q modulo r.
struct PeriodPair {
  std::uint64_t r = 0;
  std::uint64_t q = 0;
  friend bool operator==(const PeriodPair&, const PeriodPair&) = default;
  friend auto operator<=>(const PeriodPair&, const PeriodPair&) = default;
};

/// Period pairs with pairwise distinct prime q; kept sorted by r.
struct PeriodSystem {
  std::vector<PeriodPair> pairs;
  friend bool operator==(const PeriodSystem&, const PeriodSystem&) = default;
};

inline std::uint64_t system_degree(const PeriodSystem& p) {
  std::uint64_t d = 1;
  for (const auto& pair : p.pairs) d *= pair.q;
  return d;
}

/// Order of a in (Z/rZ)^x for prime r, a not divisible by r.
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t r) {
  if (r < 2 || a % r == 0) throw DomainError("multiplicative_order: a must be a unit modulo r");
  std::uint64_t ord = r - 1;
  for (std::uint64_t l : small_prime_divisors(r - 1)) {
    while (ord % l == 0 && mod_pow(Natural(a), Natural(ord / l), Natural(r)) == Natural(1)) ord /= l;
  }
  return ord;
}

inline bool is_period_pair(const Natural& n, std::uint64_t r, std::uint64_t q) {
  if (n <= Natural(1)) throw DomainError("is_period_pair: N must be > 1");
  if (r < 3 || q < 2) return false;
  if (!is_small_prime(Natural(r)) || !is_small_prime(Natural(q))) return false;
  if ((r - 1) % q != 0) return false;
  const std::uint64_t nr = (n % Natural(r)).to_u64();
  if (nr == 0) return false;
  const std::uint64_t y = mod_pow(Natural(nr), Natural((r - 1) / q), Natural(r)).to_u64();
  return multiplicative_order(y, r) == q;
}

/// Exclusive upper limits on r and q for the period search.
struct PeriodSearchBounds {
  std::uint64_t r_limit = 0;  // r < r_limit
  std::uint64_t q_limit = 0;  // q < q_limit

  /// r < D^(6/11) and q < D^(3/11), compared exactly as r^11 < D^6 and
  /// q^11 < D^3. Empty for every D below roughly 13.
  static PeriodSearchBounds asymptotic(std::uint64_t target) {
    const BigInt d = target;
    auto first_not_below = [&](unsigned num) {
      const BigInt rhs = pow(d, num);
      std::uint64_t x = static_cast<std::uint64_t>(std::pow(static_cast<double>(target), num / 11.0));
      x = x > 2 ? x - 2 : 0;
      while (pow(BigInt(x), 11) < rhs) ++x;
      return x;
    };
    return {first_not_below(6), first_not_below(3)};
  }

  /// Widened limits for small D: r < max(D^(6/11), 32 D) and
  /// q < max(D^(3/11), 2 D), so that a single prime q in [D, 2D) is allowed.
  static PeriodSearchBounds desk(std::uint64_t target) {
    const auto a = asymptotic(target);
    return {std::max(a.r_limit, 32 * target), std::max(a.q_limit, 2 * target)};
  }

  friend bool operator==(const PeriodSearchBounds&, const PeriodSearchBounds&) = default;
};

namespace detail {

struct SubsetSearch {
  std::vector<PeriodPair> candidates;  // ascending q
  std::uint64_t lo = 0, hi = 0;        // product window [lo, hi)
  std::optional<std::vector<PeriodPair>> best;
  std::uint64_t best_cost = 0;

  static std::uint64_t cost(const std::vector<PeriodPair>& s) {
    std::uint64_t c = 0;
    for (const auto& p : s) c += p.q * p.r;
    return c;
  }

  static std::vector<std::uint64_t> qs(const std::vector<PeriodPair>& s) {
    std::vector<std::uint64_t> out;
    for (const auto& p : s) out.push_back(p.q);
    return out;
  }

  void consider(const std::vector<PeriodPair>& chosen) {
    const std::uint64_t c = cost(chosen);
    if (!best || c < best_cost || (c == best_cost && qs(chosen) < qs(*best))) {
      best = chosen;
      best_cost = c;
    }
  }

  void run(std::size_t from, std::uint64_t product, std::vector<PeriodPair>& chosen) {
    if (product >= lo && product < hi) consider(chosen);
    for (std::size_t i = from; i < candidates.size(); ++i) {
      if (product * candidates[i].q >= hi) break;  // ascending q
      chosen.push_back(candidates[i]);
      run(i + 1, product * candidates[i].q, chosen);
      chosen.pop_back();
    }
  }
};

}  // namespace detail

/// Searches primes r below the r-limit in ascending order and, for every
/// prime q | r-1 below the q-limit, keeps the smallest r making (r, q) a
/// period pair. Among the subsets of these pairs whose q-product lies in
/// [D, 2D), returns the one with the smallest sum of q*r (ties broken by
/// the ascending list of q). Deterministic in (N, D, bounds).
inline std::optional<PeriodSystem> find_period_system(const Natural& n, std::uint64_t target,
                                                      const PeriodSearchBounds& bounds) {
  if (n <= Natural(1)) throw DomainError("find_period_system: N must be > 1");
  if (target < 2) throw DomainError("find_period_system: D must be >= 2");
  std::map<std::uint64_t, std::uint64_t> smallest_r;  // q -> r
  for (std::uint64_t r = 3; r < bounds.r_limit; r += 2) {
    if (!is_small_prime(Natural(r))) continue;
    for (std::uint64_t q : small_prime_divisors(r - 1)) {
      if (q >= bounds.q_limit || smallest_r.contains(q)) continue;
      if (is_period_pair(n, r, q)) smallest_r[q] = r;
    }
  }
  detail::SubsetSearch search;
  for (const auto& [q, r] : smallest_r) search.candidates.push_back({r, q});
  search.lo = target;
  search.hi = 2 * target;
  std::vector<PeriodPair> chosen;
  search.run(0, 1, chosen);
  if (!search.best) return std::nullopt;
  PeriodSystem sys{*search.best};
  std::sort(sys.pairs.begin(), sys.pairs.end());
  return sys;
}

inline std::optional<PeriodSystem> find_period_system(const Natural& n, std::uint64_t target) {
  return find_period_system(n, target, PeriodSearchBounds::desk(target));
}

/// Sidecar text: one `r q` line per pair, ascending r.
inline std::string to_sidecar(const PeriodSystem& p) {
  std::ostringstream os;
  for (const auto& pair : p.pairs) os << pair.r << ' ' << pair.q << '\n';
  return os.str();
}

inline PeriodSystem parse_sidecar(const std::string& text) {
  std::istringstream is(text);
  PeriodSystem p;
  std::uint64_t r = 0, q = 0;
  while (is >> r >> q) p.pairs.push_back({r, q});
  if (!is.eof()) throw DomainError("parse_sidecar: malformed line");
  std::sort(p.pairs.begin(), p.pairs.end());
  return p;
}

}  // namespace pfprime
