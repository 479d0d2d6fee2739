#pragma once

#include "pfprime/detail/mod_kernels.hpp"
#include "pfprime/natural.hpp"
#include "pfprime/ring_arith.hpp"
#include "pfprime/rng.hpp"

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pfprime {

/// Dense polynomial over Z/NZ. Coefficient i multiplies x^i. Values are kept
/// canonical: every coefficient is reduced and there are no trailing zeros,
/// so the zero polynomial has an empty coefficient list.
class ModPoly {
 public:
  ModPoly(Natural modulus, std::vector<Natural> coeffs) : modulus_(std::move(modulus)), coeffs_(std::move(coeffs)) {
    if (modulus_ < Natural(2)) throw DomainError("ModPoly: modulus must be >= 2");
    for (auto& c : coeffs_) c %= modulus_;
    trim();
  }

  static ModPoly zero(const Natural& modulus) { return ModPoly(modulus, {}); }
  static ModPoly constant(const Natural& modulus, const Natural& c) { return ModPoly(modulus, {c}); }
  static ModPoly monomial(const Natural& modulus, const Natural& c, std::size_t k) {
    std::vector<Natural> coeffs(k + 1, Natural(0));
    coeffs[k] = c;
    return ModPoly(modulus, std::move(coeffs));
  }
  static ModPoly x(const Natural& modulus) { return monomial(modulus, Natural(1), 1); }

  /// Builds a polynomial from small signed integer coefficients (low to high),
  /// reducing negatives modulo `modulus`.
  static ModPoly from_signed(const Natural& modulus, std::initializer_list<long long> coeffs) {
    std::vector<Natural> out;
    for (long long c : coeffs) {
      BigInt v = BigInt(c) % modulus.raw();
      if (v.sign() < 0) v += modulus.raw();
      out.emplace_back(std::move(v));
    }
    return ModPoly(modulus, std::move(out));
  }

  const Natural& modulus() const { return modulus_; }
  const std::vector<Natural>& coeffs() const { return coeffs_; }

  /// -1 for the zero polynomial.
  std::ptrdiff_t degree() const { return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == Natural(1); }
  const Natural& lead() const {
    if (coeffs_.empty()) throw DomainError("ModPoly: zero polynomial has no leading coefficient");
    return coeffs_.back();
  }
  Natural coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Natural(0); }

  /// Same integer coefficients reduced modulo p, as a polynomial over Z/pZ.
  ModPoly reduced_mod(const Natural& p) const { return ModPoly(p, coeffs_); }

  ModPoly operator+(const ModPoly& o) const {
    require_same_modulus(o);
    std::vector<Natural> out(std::max(coeffs_.size(), o.coeffs_.size()), Natural(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + o.coeff(i);
    return ModPoly(modulus_, std::move(out));
  }
  ModPoly operator-(const ModPoly& o) const {
    require_same_modulus(o);
    std::vector<Natural> out(std::max(coeffs_.size(), o.coeffs_.size()), Natural(0));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + modulus_ - o.coeff(i);
    return ModPoly(modulus_, std::move(out));
  }
  ModPoly scaled(const Natural& c) const {
    std::vector<Natural> out = coeffs_;
    for (auto& v : out) v = v * c;
    return ModPoly(modulus_, std::move(out));
  }

  friend bool operator==(const ModPoly&, const ModPoly&) = default;

  /// Text form `N; c0,c1,...,cd`. The zero polynomial is written `N; 0`.
  std::string to_string() const {
    std::ostringstream os;
    os << modulus_ << "; ";
    if (coeffs_.empty()) {
      os << '0';
    } else {
      for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
    }
    return os.str();
  }

  /// Inverse of to_string. Surrounding whitespace is ignored; a coefficient
  /// that is not already reduced (>= N) is rejected.
  static ModPoly parse(std::string_view text) {
    auto trim_ws = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
      return s;
    };
    const auto semi = text.find(';');
    if (semi == std::string_view::npos) throw DomainError("ModPoly::parse: missing ';'");
    const Natural modulus = Natural::parse(trim_ws(text.substr(0, semi)));
    std::string_view rest = trim_ws(text.substr(semi + 1));
    if (rest.empty()) throw DomainError("ModPoly::parse: missing coefficients");
    std::vector<Natural> coeffs;
    while (true) {
      const auto comma = rest.find(',');
      const Natural c = Natural::parse(trim_ws(rest.substr(0, comma)));
      if (c >= modulus) throw DomainError("ModPoly::parse: coefficient " + c.str() + " is not below the modulus");
      coeffs.push_back(c);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return ModPoly(modulus, std::move(coeffs));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }
  void require_same_modulus(const ModPoly& o) const {
    if (modulus_ != o.modulus_) throw DomainError("ModPoly: modulus mismatch");
  }

  Natural modulus_;
  std::vector<Natural> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const ModPoly& p) { return os << p.to_string(); }

namespace detail {

inline void require_modulus_poly(const ModPoly& f) {
  if (!f.is_monic()) throw DomainError("polynomial modulus must be monic");
  if (f.degree() < 1) throw DomainError("polynomial modulus must have degree >= 1");
}

inline std::vector<Natural> monic_low(const ModPoly& f) {
  return {f.coeffs().begin(), f.coeffs().end() - 1};
}

template <class Fn>
decltype(auto) with_residue_ring(const ModPoly& f, Fn&& fn) {
  require_modulus_poly(f);
  return with_ring(f.modulus(), [&](auto ring) -> decltype(auto) {
    using Ring = decltype(ring);
    return fn(ResidueRing<Ring>(ring, monic_low(f)));
  });
}

inline void require_reduced_operand(const ModPoly& a, const ModPoly& f) {
  if (a.modulus() != f.modulus()) throw DomainError("polynomial modulus mismatch");
  if (a.degree() >= f.degree()) throw DomainError("operand degree must be below deg f");
}

}  // namespace detail

/// Remainder of an arbitrary polynomial modulo monic f.
inline ModPoly poly_rem(const ModPoly& a, const ModPoly& f) {
  detail::require_modulus_poly(f);
  if (a.modulus() != f.modulus()) throw DomainError("poly_rem: modulus mismatch");
  const Natural& n = f.modulus();
  std::vector<Natural> r = a.coeffs();
  const std::size_t d = static_cast<std::size_t>(f.degree());
  for (std::size_t k = r.size(); k-- > d;) {
    const Natural c = r[k] % n;
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < d; ++i) r[k - d + i] = (r[k - d + i] + c * (n - f.coeffs()[i])) % n;
    r[k] = Natural(0);
  }
  if (r.size() > d) r.resize(d);
  return ModPoly(n, std::move(r));
}

/// a*b reduced modulo monic f.
inline ModPoly poly_mul_mod(const ModPoly& a, const ModPoly& b, const ModPoly& f) {
  detail::require_modulus_poly(f);
  detail::require_reduced_operand(a, f);
  detail::require_reduced_operand(b, f);
  return detail::with_residue_ring(f, [&](const auto& rr) {
    return ModPoly(f.modulus(), rr.lower(rr.mul(rr.lift(a.coeffs()), rr.lift(b.coeffs()))));
  });
}

/// a^e reduced modulo monic f; at most 2*bitlen(e) ring multiplications.
inline ModPoly poly_pow_mod(const ModPoly& a, const Natural& e, const ModPoly& f) {
  detail::require_modulus_poly(f);
  detail::require_reduced_operand(a, f);
  return detail::with_residue_ring(f, [&](const auto& rr) {
    return ModPoly(f.modulus(), rr.lower(rr.pow(rr.lift(a.coeffs()), e)));
  });
}

/// g(a) mod f by Horner's rule, for g over the same modulus.
inline ModPoly poly_compose_mod(const ModPoly& g, const ModPoly& a, const ModPoly& f) {
  detail::require_reduced_operand(a, f);
  if (g.modulus() != f.modulus()) throw DomainError("poly_compose_mod: modulus mismatch");
  return detail::with_residue_ring(f, [&](const auto& rr) {
    const auto av = rr.lift(a.coeffs());
    auto acc = rr.zero();
    for (std::size_t k = g.coeffs().size(); k-- > 0;) {
      acc = rr.mul(acc, av);
      acc[0] = rr.ring().add(acc[0], rr.ring().from(g.coeffs()[k]));
    }
    return ModPoly(f.modulus(), rr.lower(acc));
  });
}

/// Uniform polynomial with `max_deg_exclusive` independent coefficients.
inline ModPoly random_poly(std::size_t max_deg_exclusive, const Natural& modulus, Rng& rng) {
  if (max_deg_exclusive < 1) throw DomainError("random_poly: need at least one coefficient");
  if (modulus < Natural(2)) throw DomainError("random_poly: modulus must be >= 2");
  std::vector<Natural> coeffs;
  coeffs.reserve(max_deg_exclusive);
  for (std::size_t i = 0; i < max_deg_exclusive; ++i) coeffs.push_back(rng.uniform_below(modulus));
  return ModPoly(modulus, std::move(coeffs));
}

inline ModPoly random_poly(std::size_t max_deg_exclusive, const Natural& modulus, RngSeed seed) {
  Rng rng(seed);
  return random_poly(max_deg_exclusive, modulus, rng);
}

/// Random monic polynomial of exact degree d.
inline ModPoly random_monic(std::size_t d, const Natural& modulus, Rng& rng) {
  auto coeffs = random_poly(d, modulus, rng).coeffs();
  coeffs.resize(d, Natural(0));
  coeffs.push_back(Natural(1));
  return ModPoly(modulus, std::move(coeffs));
}

struct Unit {
  friend bool operator==(const Unit&, const Unit&) = default;
};
struct NonUnit {
  friend bool operator==(const NonUnit&, const NonUnit&) = default;
};
struct FactorOfN {
  Natural divisor;
  friend bool operator==(const FactorOfN&, const FactorOfN&) = default;
};
using UnitOutcome = std::variant<Unit, NonUnit, FactorOfN>;

namespace detail {

/// a mod b where b has leading coefficient with known inverse `lead_inv`.
inline ModPoly rem_with_inverse(const ModPoly& a, const ModPoly& b, const Natural& lead_inv) {
  const Natural& n = a.modulus();
  std::vector<Natural> r = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  for (std::size_t k = r.size(); k-- > db;) {
    const Natural c = r[k] * lead_inv % n;
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = (r[k - db + i] + c * (n - b.coeffs()[i])) % n;
  }
  if (r.size() > db) r.resize(db);
  return ModPoly(n, std::move(r));
}

}  // namespace detail

/// Decides whether u is invertible in (Z/NZ[x])/(f) by a Euclidean
/// remainder sequence over Z/NZ. A leading coefficient that cannot be
/// inverted exposes gcd(lead, N), returned as FactorOfN.
inline UnitOutcome poly_is_unit_mod(const ModPoly& u, const ModPoly& f) {
  detail::require_modulus_poly(f);
  detail::require_reduced_operand(u, f);
  if (u.is_zero()) return NonUnit{};
  ModPoly a = f;
  ModPoly b = u;
  for (;;) {
    if (b.is_zero()) return NonUnit{};  // gcd is a, of positive degree
    const InverseOutcome inv = try_invert(b.lead(), b.modulus());
    if (const auto* fac = std::get_if<FactorFound>(&inv)) return FactorOfN{fac->divisor};
    if (b.degree() == 0) return Unit{};
    ModPoly r = detail::rem_with_inverse(a, b, std::get<Inverse>(inv).value);
    a = std::move(b);
    b = std::move(r);
  }
}

}  // namespace pfprime
