#pragma once

#include "pfprime/detail/mod_kernels.hpp"
#include "pfprime/modpoly.hpp"
#include "pfprime/natural.hpp"
#include "pfprime/pseudofield.hpp"
#include "pfprime/ring_arith.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace pfprime {

using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational parse_rational_string(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) throw DomainError("rational: expected a/b");
  return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Size limits for exhaustive enumerations. PSEUDO_DESK_LIMIT, when set,
/// replaces every limit with its value.
struct CensusLimits {
  std::uint64_t factor_limit = 1'000'000'000'000;
  std::uint64_t mr_limit = 1'000'000;
  std::uint64_t field_limit = 1'000'000;
  std::uint64_t mod_n_limit = 10'000'000;

  static CensusLimits from_env() {
    CensusLimits l;
    if (const char* v = std::getenv("PSEUDO_DESK_LIMIT")) {
      const std::uint64_t x = Natural::parse(v).to_u64();
      l = {x, x, x, x};
    }
    return l;
  }
};

enum class BoundKind { Upper, Lower };

using Factorization = std::vector<std::pair<Natural, std::uint64_t>>;

struct CensusReport {
  Natural subject;
  Natural total;
  Natural failing;
  Rational fraction;
  Rational bound;
  BoundKind kind = BoundKind::Upper;
  Factorization factorization;

  bool bound_holds() const { return kind == BoundKind::Upper ? fraction <= bound : fraction >= bound; }
};

inline Rational make_fraction(const Natural& failing, const Natural& total) {
  return Rational(failing.raw(), total.raw());
}

/// Trial division; refuses N above the factor limit.
inline Factorization factorize_desk(const Natural& n, const CensusLimits& limits = {}) {
  if (n < Natural(2)) throw DomainError("factorize_desk: N must be >= 2");
  if (n > Natural(limits.factor_limit)) throw LimitExceeded("factorize_desk: N exceeds the desk limit");
  std::uint64_t m = n.to_u64();
  Factorization out;
  for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    std::uint64_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(Natural(p), e);
  }
  if (m > 1) out.emplace_back(Natural(m), 1);
  return out;
}

namespace detail {

/// Sums fn(lo, hi) over `jobs` contiguous shards of [begin, end).
template <class Fn>
std::uint64_t sharded_count(std::uint64_t begin, std::uint64_t end, unsigned jobs, Fn fn) {
  if (end <= begin) return 0;
  jobs = std::max(1u, jobs);
  const std::uint64_t span = end - begin;
  if (jobs == 1 || span < 2 * jobs) return fn(begin, end);
  std::vector<std::uint64_t> partial(jobs, 0);
  std::vector<std::thread> workers;
  for (unsigned j = 0; j < jobs; ++j) {
    const std::uint64_t lo = begin + span * j / jobs;
    const std::uint64_t hi = begin + span * (j + 1) / jobs;
    workers.emplace_back([&, j, lo, hi] { partial[j] = fn(lo, hi); });
  }
  for (auto& w : workers) w.join();
  std::uint64_t sum = 0;
  for (auto c : partial) sum += c;
  return sum;
}

inline bool is_prime_power(const Factorization& f) { return f.size() == 1; }

inline bool is_composite(const Factorization& f) { return f.size() > 1 || f.front().second > 1; }

/// Coefficient vector of the polynomial with base-m digits of `code`.
inline std::vector<Natural> decode_poly(std::uint64_t code, std::uint64_t m, std::size_t d) {
  std::vector<Natural> c(d);
  for (std::size_t i = 0; i < d; ++i) {
    c[i] = Natural(code % m);
    code /= m;
  }
  return c;
}

inline std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t limit, const char* what) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (v > limit / base) throw LimitExceeded(std::string(what) + ": enumeration exceeds the desk limit");
    v *= base;
  }
  return v;
}

inline void require_field_inputs(const Natural& n, const Natural& p, const ModPoly& f) {
  if (!is_small_prime(p)) throw DomainError("census: p must be prime");
  if (!(n % p).is_zero()) throw DomainError("census: p must divide N");
  if (!f.is_monic() || f.degree() < 1) throw DomainError("census: f must be monic of degree >= 1");
  if (!is_irreducible_mod_p(f, p)) throw DomainError("census: f must be irreducible modulo p");
}

}  // namespace detail

/// Bases a in [1, N-1] for which Miller-Rabin reports "probably prime".
inline CensusReport mr_nonwitness_census(const Natural& n, unsigned jobs = 1, const CensusLimits& limits = {}) {
  if (n < Natural(3) || n.is_even()) throw DomainError("mr_nonwitness_census: N must be odd and >= 3");
  if (n > Natural(limits.mr_limit)) throw LimitExceeded("mr_nonwitness_census: N exceeds the desk limit");
  const auto factors = factorize_desk(n, limits);
  if (!detail::is_composite(factors)) throw DomainError("mr_nonwitness_census: N must be composite");

  const std::uint64_t m = n.to_u64();
  const auto [s, t_nat] = decompose_two_power(n - Natural(1));
  const std::uint64_t t = t_nat.to_u64();
  const std::uint64_t count = detail::sharded_count(1, m, jobs, [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t c = 0;
    for (std::uint64_t a = lo; a < hi; ++a) {
      std::uint64_t x = 1, b = a, e = t;
      while (e) {
        if (e & 1) x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * b % m);
        b = static_cast<std::uint64_t>(static_cast<unsigned __int128>(b) * b % m);
        e >>= 1;
      }
      bool pass = x == 1 || x == m - 1;
      for (std::uint64_t i = 1; !pass && i < s; ++i) {
        x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % m);
        pass = x == m - 1;
      }
      c += pass;
    }
    return c;
  });

  BigInt denom = BigInt(1) << (factors.size() - 1);
  for (const auto& [p, e] : factors) denom *= pow(p.raw(), static_cast<unsigned>(e - 1));
  CensusReport rep;
  rep.subject = n;
  rep.total = n - Natural(1);
  rep.failing = Natural(count);
  rep.fraction = make_fraction(rep.failing, rep.total);
  rep.bound = std::min(Rational(1, 4), Rational(BigInt(1), denom));
  rep.factorization = factors;
  return rep;
}

/// Number of beta in F_p[x]/(f) with (beta+1)^N - beta^N - 1 = 0. Powers are
/// taken through discrete log and antilog tables of the multiplicative group.
inline Natural root_count_in_extension(const Natural& n, const Natural& p, const ModPoly& f,
                                       const CensusLimits& limits = {}) {
  detail::require_field_inputs(n, p, f);
  const ModPoly fp = f.reduced_mod(p);
  const std::uint64_t pp = p.to_u64();
  const auto d = static_cast<std::size_t>(fp.degree());
  const std::uint64_t q = detail::checked_power(pp, d, limits.field_limit, "root_count_in_extension");
  const std::uint64_t order = q - 1;

  const detail::WordRing ring(pp);
  const detail::ResidueRing<detail::WordRing> field(ring, detail::monic_low(fp));
  auto encode = [&](const std::vector<std::uint64_t>& v) {
    std::uint64_t code = 0;
    for (std::size_t i = d; i-- > 0;) code = code * pp + v[i];
    return code;
  };
  auto decode = [&](std::uint64_t code) {
    std::vector<std::uint64_t> v(d);
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = code % pp;
      code /= pp;
    }
    return v;
  };

  // find a generator by walking powers until the cycle has full length
  std::vector<std::uint64_t> exp_table(order), log_table(q, 0);
  bool found = false;
  for (std::uint64_t cand = 2; cand < q && !found; ++cand) {
    const auto g = decode(cand);
    auto cur = field.one();
    std::uint64_t i = 0;
    for (; i < order; ++i) {
      const std::uint64_t code = encode(cur);
      if (i > 0 && code == 1) break;
      exp_table[i] = code;
      cur = field.mul(cur, g);
    }
    found = i == order;
  }
  if (!found && order == 1) exp_table[0] = 1, found = true;
  if (!found) throw InvariantViolation("root_count_in_extension: no generator found");
  for (std::uint64_t i = 0; i < order; ++i) log_table[exp_table[i]] = i;

  const std::uint64_t e = (n % Natural(order)).to_u64();
  auto power_n = [&](std::uint64_t code) -> std::uint64_t {
    if (code == 0) return 0;
    return exp_table[static_cast<std::uint64_t>(static_cast<unsigned __int128>(log_table[code]) * e % order)];
  };
  auto add_digits = [&](std::uint64_t a, std::uint64_t b, bool subtract) {
    std::uint64_t out = 0, scale = 1;
    for (std::size_t i = 0; i < d; ++i) {
      const std::uint64_t x = a % pp, y = b % pp;
      out += scale * (subtract ? (x + pp - y) % pp : (x + y) % pp);
      a /= pp;
      b /= pp;
      scale *= pp;
    }
    return out;
  };

  std::uint64_t roots = 0;
  for (std::uint64_t beta = 0; beta < q; ++beta) {
    const std::uint64_t lhs = power_n(add_digits(beta, 1, false));
    const std::uint64_t rhs = add_digits(power_n(beta), 1, false);
    roots += lhs == rhs;
  }
  return Natural(roots);
}

/// Number of h over Z/mZ with deg h < deg f and (h+1)^N = h^N + 1 modulo
/// (m, f), for any modulus m >= 2.
inline Natural ab_failure_count(const Natural& n, const Natural& m, const ModPoly& f, unsigned jobs = 1,
                                const CensusLimits& limits = {}) {
  if (!f.is_monic() || f.degree() < 1) throw DomainError("ab_failure_count: f must be monic of degree >= 1");
  if (m < Natural(2) || !m.fits_u64()) throw DomainError("ab_failure_count: modulus out of range");
  const ModPoly fm = f.reduced_mod(m);
  const std::uint64_t mm = m.to_u64();
  const auto d = static_cast<std::size_t>(fm.degree());
  const std::uint64_t total = detail::checked_power(mm, d, limits.mod_n_limit, "ab_failure_count");
  const detail::ResidueRing<detail::WordRing> rr(detail::WordRing(mm), detail::monic_low(fm));
  const std::uint64_t count = detail::sharded_count(0, total, jobs, [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t c = 0;
    for (std::uint64_t code = lo; code < hi; ++code) {
      const auto h = rr.lift(detail::decode_poly(code, mm, d));
      c += rr.pow(rr.add_one(h), n) == rr.add_one(rr.pow(h, n));
    }
    return c;
  });
  return Natural(count);
}

/// Degree of (x+1)^N - x^N - 1 over F_p, or -1 when it vanishes. By Lucas'
/// theorem the top surviving term is x^(N - p^v), p^v the lowest nonzero
/// base-p digit position of N.
inline long long ab_polynomial_degree_mod_p(const Natural& n, const Natural& p) {
  Natural pv(1);
  while ((n % (pv * p)).is_zero()) pv = pv * p;
  const Natural k = n - pv;
  if (k.is_zero()) return -1;
  return static_cast<long long>(k.to_u64());
}

inline CensusReport ab_failure_census_mod_p(const Natural& n, const Natural& p, const ModPoly& f, unsigned jobs = 1,
                                            const CensusLimits& limits = {}) {
  detail::require_field_inputs(n, p, f);
  const auto d = static_cast<std::uint64_t>(f.degree());
  const std::uint64_t total = detail::checked_power(p.to_u64(), d, limits.field_limit, "ab_failure_census_mod_p");
  CensusReport rep;
  rep.subject = n;
  rep.total = Natural(total);
  rep.failing = ab_failure_count(n, p, f, jobs, limits);
  rep.fraction = make_fraction(rep.failing, rep.total);
  const long long deg_g = ab_polynomial_degree_mod_p(n, p);
  rep.bound = deg_g < 0 ? Rational(1) : Rational(BigInt(deg_g), BigInt(total));
  rep.factorization = factorize_desk(n, limits);
  return rep;
}

/// Enumerates every h over Z/NZ; the bound is N^r / prod p_i^(deg f) for
/// the r distinct primes p_i dividing N.
inline CensusReport ab_failure_census_mod_N(const Natural& n, const ModPoly& f, unsigned jobs = 1,
                                            const CensusLimits& limits = {}) {
  if (f.degree() < 1) throw DomainError("ab_failure_census_mod_N: deg f must be >= 1");
  if (!f.is_monic()) throw DomainError("ab_failure_census_mod_N: f must be monic");
  if (f.modulus() != n) throw DomainError("ab_failure_census_mod_N: f must be over Z/NZ");
  const auto factors = factorize_desk(n, limits);
  if (!detail::is_composite(factors)) throw DomainError("ab_failure_census_mod_N: N must be composite");
  const auto d = static_cast<unsigned>(f.degree());
  const std::uint64_t total = detail::checked_power(n.to_u64(), d, limits.mod_n_limit, "ab_failure_census_mod_N");
  CensusReport rep;
  rep.subject = n;
  rep.total = Natural(total);
  rep.failing = ab_failure_count(n, n, f, jobs, limits);
  rep.fraction = make_fraction(rep.failing, rep.total);
  BigInt denom = 1;
  for (const auto& [p, e] : factors) denom *= pow(p.raw(), d);
  rep.bound = Rational(pow(n.raw(), static_cast<unsigned>(factors.size())), denom);
  rep.factorization = factors;
  return rep;
}

struct ClassScanEntry {
  std::uint64_t k = 0;
  std::uint64_t p = 0;  // 2k + 1
  std::uint64_t q = 0;  // 6k + 1
  CensusReport report;  // bound = (1/12)(1 - 1/p)(1 - 1/q), a lower bound
  bool t_is_quarter = false;  // odd part of N - 1 equals (N - 1)/4

  bool holds() const { return report.bound_holds() && report.fraction >= Rational(1, 21) && t_is_quarter; }
};

/// Odd k <= k_max with 2k+1 and 6k+1 both prime; N = (2k+1)(6k+1).
inline std::vector<ClassScanEntry> heuristic_class_scan(std::uint64_t k_max, unsigned jobs = 1,
                                                        const CensusLimits& limits = {}) {
  if (k_max < 1) throw DomainError("heuristic_class_scan: k_max must be >= 1");
  std::vector<ClassScanEntry> out;
  for (std::uint64_t k = 1; k <= k_max; k += 2) {
    const std::uint64_t p = 2 * k + 1, q = 6 * k + 1;
    if (!is_small_prime(Natural(p)) || !is_small_prime(Natural(q))) continue;
    const Natural n(p * q);
    ClassScanEntry e{k, p, q, mr_nonwitness_census(n, jobs, limits), false};
    e.report.kind = BoundKind::Lower;
    e.report.bound = Rational(1, 12) * Rational(p - 1, p) * Rational(q - 1, q);
    const auto [s, t] = decompose_two_power(n - Natural(1));
    e.t_is_quarter = s == 2 && t == (n - Natural(1)) / Natural(4);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace pfprime
