#pragma once

#include "pfprime/detail/mod_kernels.hpp"
#include "pfprime/modpoly.hpp"
#include "pfprime/natural.hpp"
#include "pfprime/ring_arith.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pfprime {

/// Element of (Z/NZ)[z]/(Phi_r) in the power basis 1, z, ..., z^(r-2).
struct CyclotomicElt {
  Natural modulus;
  std::uint64_t r = 0;
  std::vector<Natural> coords;  // length r - 1

  friend bool operator==(const CyclotomicElt&, const CyclotomicElt&) = default;
};

/// z -> z^a for a unit a modulo r.
struct CyclotomicAut {
  std::uint64_t a = 1;
};

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

template <class Ring>
class CyclotomicRing {
 public:
  using elem = typename Ring::elem;
  using Vec = std::vector<elem>;

  CyclotomicRing(Ring ring, std::uint64_t r) : ring_(std::move(ring)), r_(r) {}

  const Ring& ring() const { return ring_; }
  std::size_t dim() const { return static_cast<std::size_t>(r_ - 1); }

  Vec zero() const { return Vec(dim(), ring_.zero()); }
  Vec one() const {
    Vec v = zero();
    v[0] = ring_.one();
    return v;
  }

  /// Folds a vector indexed by exponents mod r into the power basis using
  /// z^(r-1) = -(1 + z + ... + z^(r-2)).
  Vec from_full(const Vec& full) const {
    Vec out(dim());
    const elem top = full[r_ - 1];
    for (std::size_t i = 0; i < dim(); ++i) out[i] = ring_.sub(full[i], top);
    return out;
  }

  Vec zeta_power(std::uint64_t k) const {
    Vec full(r_, ring_.zero());
    full[k % r_] = ring_.one();
    return from_full(full);
  }

  Vec add(const Vec& a, const Vec& b) const {
    Vec out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = ring_.add(a[i], b[i]);
    return out;
  }
  Vec sub(const Vec& a, const Vec& b) const {
    Vec out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = ring_.sub(a[i], b[i]);
    return out;
  }

  Vec mul(const Vec& a, const Vec& b) const {
    const std::size_t n = dim();
    std::vector<typename Ring::acc> t(r_, ring_.zero_acc());
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t k = i + j;
        if (k >= r_) k -= r_;
        ring_.mac(t[k], a[i], b[j]);
      }
    }
    Vec full(r_);
    for (std::size_t k = 0; k < r_; ++k) full[k] = ring_.reduce(t[k]);
    return from_full(full);
  }

  Vec apply_aut(const Vec& a, std::uint64_t g) const {
    Vec full(r_, ring_.zero());
    for (std::size_t i = 0; i < dim(); ++i) {
      const std::size_t k = static_cast<std::size_t>((static_cast<unsigned __int128>(i) * g) % r_);
      full[k] = ring_.add(full[k], a[i]);
    }
    return from_full(full);
  }

  bool is_constant(const Vec& a) const {
    for (std::size_t i = 1; i < dim(); ++i)
      if (a[i] != 0) return false;
    return true;
  }

 private:
  Ring ring_;
  std::uint64_t r_;
};

inline void require_cyclotomic_modulus(const Natural& n, std::uint64_t r) {
  if (n < Natural(2)) throw DomainError("cyclotomic: modulus must be >= 2");
  if (r < 3 || !is_small_prime(Natural(r))) throw DomainError("cyclotomic: r must be an odd prime");
}

inline void require_same_ring(const CyclotomicElt& a, const CyclotomicElt& b) {
  if (a.modulus != b.modulus || a.r != b.r) throw DomainError("cyclotomic: operands live in different rings");
}

template <class Fn>
decltype(auto) with_cyclotomic_ring(const Natural& n, std::uint64_t r, Fn&& fn) {
  return with_ring(n, [&](auto ring) -> decltype(auto) {
    using Ring = decltype(ring);
    return fn(CyclotomicRing<Ring>(ring, r));
  });
}

template <class CR>
typename CR::Vec lift_cyc(const CR& cr, const CyclotomicElt& e) {
  typename CR::Vec v(cr.dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = cr.ring().from(e.coords[i]);
  return v;
}

template <class CR>
CyclotomicElt lower_cyc(const CR& cr, const Natural& n, std::uint64_t r, const typename CR::Vec& v) {
  CyclotomicElt e{n, r, {}};
  e.coords.reserve(v.size());
  for (const auto& c : v) e.coords.push_back(cr.ring().to_natural(c));
  return e;
}

inline void require_period_inputs(std::uint64_t r, std::uint64_t q, const Natural& n) {
  require_cyclotomic_modulus(n, r);
  if (!is_small_prime(Natural(q))) throw DomainError("gaussian period: q must be prime");
  if ((r - 1) % q != 0) throw DomainError("gaussian period: q must divide r - 1");
  if ((n % Natural(r)).is_zero()) throw DomainError("gaussian period: r must not divide N");
}

}  // namespace detail

inline CyclotomicElt cyc_zeta_power(const Natural& n, std::uint64_t r, std::uint64_t k) {
  detail::require_cyclotomic_modulus(n, r);
  return detail::with_cyclotomic_ring(n, r, [&](const auto& cr) { return detail::lower_cyc(cr, n, r, cr.zeta_power(k)); });
}

inline CyclotomicElt cyc_add(const CyclotomicElt& a, const CyclotomicElt& b) {
  detail::require_same_ring(a, b);
  return detail::with_cyclotomic_ring(a.modulus, a.r, [&](const auto& cr) {
    return detail::lower_cyc(cr, a.modulus, a.r, cr.add(detail::lift_cyc(cr, a), detail::lift_cyc(cr, b)));
  });
}

inline CyclotomicElt cyc_mul(const CyclotomicElt& a, const CyclotomicElt& b) {
  detail::require_same_ring(a, b);
  return detail::with_cyclotomic_ring(a.modulus, a.r, [&](const auto& cr) {
    return detail::lower_cyc(cr, a.modulus, a.r, cr.mul(detail::lift_cyc(cr, a), detail::lift_cyc(cr, b)));
  });
}

inline CyclotomicElt cyc_apply_aut(const CyclotomicElt& e, CyclotomicAut tau) {
  if (tau.a % e.r == 0) throw DomainError("cyc_apply_aut: exponent must be a unit modulo r");
  return detail::with_cyclotomic_ring(e.modulus, e.r, [&](const auto& cr) {
    return detail::lower_cyc(cr, e.modulus, e.r, cr.apply_aut(detail::lift_cyc(cr, e), tau.a % e.r));
  });
}

inline std::uint64_t smallest_primitive_root(std::uint64_t r) {
  if (r < 3 || !is_small_prime(Natural(r))) throw DomainError("smallest_primitive_root: r must be an odd prime");
  const auto divisors = small_prime_divisors(r - 1);
  for (std::uint64_t g = 2;; ++g) {
    bool primitive = true;
    for (std::uint64_t l : divisors) {
      if (mod_pow(Natural(g), Natural((r - 1) / l), Natural(r)) == Natural(1)) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
}

/// Exponents i in [1, r) that are q-th power residues modulo r, ascending.
inline std::vector<std::uint64_t> qth_power_residues(std::uint64_t r, std::uint64_t q) {
  std::vector<bool> seen(r, false);
  for (std::uint64_t x = 1; x < r; ++x) seen[mod_pow(Natural(x), Natural(q), Natural(r)).to_u64()] = true;
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 1; i < r; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

/// Sum of z^i over the q-th power residues i modulo r.
inline CyclotomicElt gaussian_period(std::uint64_t r, std::uint64_t q, const Natural& n) {
  detail::require_period_inputs(r, q, n);
  return detail::with_cyclotomic_ring(n, r, [&](const auto& cr) {
    typename std::decay_t<decltype(cr)>::Vec full(r, cr.ring().zero());
    for (std::uint64_t i : qth_power_residues(r, q)) full[i] = cr.ring().one();
    return detail::lower_cyc(cr, n, r, cr.from_full(full));
  });
}

/// Product of (x - sigma_{g^j}(eta)) for j = 0..q-1 with g the smallest
/// primitive root modulo r, expanded in the cyclotomic ring. Throws
/// InvariantViolation if any coefficient keeps a non-constant part.
inline ModPoly period_polynomial(std::uint64_t r, std::uint64_t q, const Natural& n) {
  detail::require_period_inputs(r, q, n);
  const std::uint64_t g = smallest_primitive_root(r);
  const CyclotomicElt eta = gaussian_period(r, q, n);
  return detail::with_cyclotomic_ring(n, r, [&](const auto& cr) {
    using Vec = typename std::decay_t<decltype(cr)>::Vec;
    const Vec base = detail::lift_cyc(cr, eta);
    // poly[k] is the coefficient of x^k
    std::vector<Vec> poly{cr.one()};
    std::uint64_t gj = 1;
    for (std::uint64_t j = 0; j < q; ++j) {
      const Vec conj = cr.apply_aut(base, gj);
      std::vector<Vec> next(poly.size() + 1, cr.zero());
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] = cr.add(next[k + 1], poly[k]);
        next[k] = cr.sub(next[k], cr.mul(conj, poly[k]));
      }
      poly = std::move(next);
      gj = gj * g % r;
    }
    std::vector<Natural> coeffs;
    coeffs.reserve(poly.size());
    for (const auto& c : poly) {
      if (!cr.is_constant(c)) throw InvariantViolation("period_polynomial: coefficient does not collapse to Z/NZ");
      coeffs.push_back(cr.ring().to_natural(c[0]));
    }
    return ModPoly(n, std::move(coeffs));
  });
}

}  // namespace pfprime
