#pragma once

#include "pfprime/counters.hpp"
#include "pfprime/natural.hpp"

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

namespace pfprime {

/// Result of attempting to invert an element of Z/NZ: either the inverse,
/// or a nontrivial divisor of N exposed by the failed inversion.
struct Inverse {
  Natural value;
  friend bool operator==(const Inverse&, const Inverse&) = default;
};
struct FactorFound {
  Natural divisor;
  friend bool operator==(const FactorFound&, const FactorFound&) = default;
};
using InverseOutcome = std::variant<Inverse, FactorFound>;

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, const Natural& e, std::uint64_t m) {
  const std::size_t bits = e.bit_length();
  if (bits == 0) return 1 % m;
  base %= m;
  std::uint64_t acc = base;
  std::uint64_t mults = 0;
  for (std::size_t i = bits - 1; i-- > 0;) {
    acc = mulmod_u64(acc, acc, m);
    ++mults;
    if (e.bit(i)) {
      acc = mulmod_u64(acc, base, m);
      ++mults;
    }
  }
  count_modular_mults(mults);
  return acc;
}

}  // namespace detail

/// base^exponent mod modulus by left-to-right binary exponentiation.
/// Uses at most 2*bitlen(exponent) modular multiplications.
inline Natural mod_pow(const Natural& base, const Natural& exponent, const Natural& modulus) {
  if (modulus < Natural(2)) throw DomainError("mod_pow: modulus must be >= 2");
  if (modulus.fits_u64()) {
    return Natural(detail::powmod_u64((base % modulus).to_u64(), exponent, modulus.to_u64()));
  }
  const std::size_t bits = exponent.bit_length();
  if (bits == 0) return Natural(1);
  const BigInt& m = modulus.raw();
  const BigInt b = base.raw() % m;
  BigInt acc = b;
  std::uint64_t mults = 0;
  for (std::size_t i = bits - 1; i-- > 0;) {
    acc = acc * acc % m;
    ++mults;
    if (exponent.bit(i)) {
      acc = acc * b % m;
      ++mults;
    }
  }
  detail::count_modular_mults(mults);
  return Natural(std::move(acc));
}

inline Natural gcd(const Natural& a, const Natural& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd: both arguments are zero");
  return Natural(boost::multiprecision::gcd(a.raw(), b.raw()));
}

/// Inverse of a modulo `modulus`, or the shared factor gcd(a, modulus) when
/// a is not a unit. Arguments are reduced modulo `modulus` first.
inline InverseOutcome try_invert(const Natural& a, const Natural& modulus) {
  if (modulus < Natural(2)) throw DomainError("try_invert: modulus must be >= 2");
  const Natural r = a % modulus;
  if (r.is_zero()) throw DomainError("try_invert: cannot invert zero");
  // Extended Euclid on signed values.
  BigInt old_r = r.raw(), cur_r = modulus.raw();
  BigInt old_s = 1, cur_s = 0;
  while (!cur_r.is_zero()) {
    const BigInt q = old_r / cur_r;
    old_r = std::exchange(cur_r, old_r - q * cur_r);
    old_s = std::exchange(cur_s, old_s - q * cur_s);
  }
  if (old_r != 1) return FactorFound{Natural(old_r)};
  BigInt inv = old_s % modulus.raw();
  if (inv.sign() < 0) inv += modulus.raw();
  return Inverse{Natural(std::move(inv))};
}

struct TwoPowerSplit {
  std::uint64_t s = 0;  // exponent of 2
  Natural t;            // odd part
  friend bool operator==(const TwoPowerSplit&, const TwoPowerSplit&) = default;
};

/// Writes n = 2^s * t with t odd.
inline TwoPowerSplit decompose_two_power(const Natural& n) {
  if (n.is_zero()) throw DomainError("decompose_two_power: input must be >= 1");
  const auto s = static_cast<std::uint64_t>(lsb(n.raw()));
  return {s, n >> static_cast<unsigned>(s)};
}

/// Largest k with 2^k <= n.
inline std::uint64_t floor_log2(const Natural& n) {
  if (n.is_zero()) throw DomainError("floor_log2: input must be >= 1");
  return n.bit_length() - 1;
}

/// Deterministic primality check for the small auxiliary values used by the
/// period search and the census (r, q, p). Exact for n < 3.3e24; beyond that
/// it is a strong probable-prime test to 13 fixed bases.
inline bool is_small_prime(const Natural& n) {
  if (n < Natural(2)) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (std::uint64_t p : kBases) {
    if (n == Natural(p)) return true;
    if ((n % Natural(p)).is_zero()) return false;
  }
  const Natural n1 = n - Natural(1);
  const auto [s, t] = decompose_two_power(n1);
  for (std::uint64_t a : kBases) {
    Natural x = mod_pow(Natural(a), t, n);
    if (x == Natural(1) || x == n1) continue;
    bool passed = false;
    for (std::uint64_t i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n1) {
        passed = true;
        break;
      }
    }
    if (!passed) return false;
  }
  return true;
}

/// Distinct prime divisors of a small n by trial division.
inline std::vector<std::uint64_t> small_prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace pfprime
