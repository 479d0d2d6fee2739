#pragma once

#include "pfprime/counters.hpp"
#include "pfprime/natural.hpp"

#include <cstdint>
#include <vector>

namespace pfprime::detail {

/// Z/mZ for m < 2^64, elements as machine words. When m < 2^32 products are
/// accumulated unreduced in 128 bits and reduced once per coefficient.
struct WordRing {
  using elem = std::uint64_t;
  using acc = unsigned __int128;

  explicit WordRing(std::uint64_t modulus) : m(modulus), narrow(modulus < (std::uint64_t{1} << 32)) {}

  elem from(const Natural& x) const { return (x % Natural(m)).to_u64(); }
  Natural to_natural(elem x) const { return Natural(x); }
  Natural modulus() const { return Natural(m); }
  elem zero() const { return 0; }
  elem one() const { return 1 % m; }
  acc zero_acc() const { return 0; }

  void mac(acc& t, elem a, elem b) const {
    t += static_cast<acc>(a) * b;
    if (!narrow) t %= m;
  }
  elem reduce(const acc& t) const { return static_cast<elem>(t % m); }

  elem add(elem a, elem b) const {
    const acc s = static_cast<acc>(a) + b;
    return static_cast<elem>(s >= m ? s - m : s);
  }
  elem sub(elem a, elem b) const { return a >= b ? a - b : static_cast<elem>(static_cast<acc>(a) + m - b); }
  elem neg(elem a) const { return a == 0 ? 0 : m - a; }
  elem mul(elem a, elem b) const { return static_cast<elem>(static_cast<acc>(a) * b % m); }

  std::uint64_t m;
  bool narrow;
};

/// Z/mZ for arbitrary m, elements as cpp_int in [0, m).
struct BigRing {
  using elem = BigInt;
  using acc = BigInt;

  explicit BigRing(const Natural& modulus) : m(modulus.raw()) {}

  elem from(const Natural& x) const { return x.raw() % m; }
  Natural to_natural(const elem& x) const { return Natural(x); }
  Natural modulus() const { return Natural(m); }
  elem zero() const { return 0; }
  elem one() const { return m == 1 ? 0 : 1; }
  acc zero_acc() const { return 0; }

  void mac(acc& t, const elem& a, const elem& b) const { t += a * b; }
  elem reduce(const acc& t) const { return t % m; }

  elem add(const elem& a, const elem& b) const {
    elem s = a + b;
    if (s >= m) s -= m;
    return s;
  }
  elem sub(const elem& a, const elem& b) const {
    elem s = a - b;
    if (s.sign() < 0) s += m;
    return s;
  }
  elem neg(const elem& a) const { return a.is_zero() ? elem(0) : elem(m - a); }
  elem mul(const elem& a, const elem& b) const { return a * b % m; }

  BigInt m;
};

/// Test hook: when set on a thread, every dispatch takes the big-integer path.
inline bool& force_big_ring() {
  thread_local bool force = false;
  return force;
}

/// Calls fn with the fastest ring policy that can represent Z/mZ.
template <class Fn>
decltype(auto) with_ring(const Natural& m, Fn&& fn) {
  if (m.fits_u64() && !force_big_ring()) return fn(WordRing(m.to_u64()));
  return fn(BigRing(m));
}

/// Dense residue ring (Z/mZ)[x]/(f) for monic f of degree d >= 1. Elements
/// are coefficient vectors of length exactly d.
template <class Ring>
class ResidueRing {
 public:
  using elem = typename Ring::elem;
  using Vec = std::vector<elem>;

  /// `monic_low` holds f_0..f_{d-1}; the leading 1 is implicit.
  ResidueRing(Ring ring, const std::vector<Natural>& monic_low) : ring_(std::move(ring)) {
    neg_f_.reserve(monic_low.size());
    for (const auto& c : monic_low) neg_f_.push_back(ring_.neg(ring_.from(c)));
  }

  const Ring& ring() const { return ring_; }
  std::size_t degree() const { return neg_f_.size(); }

  Vec zero() const { return Vec(degree(), ring_.zero()); }
  Vec one() const {
    Vec v = zero();
    v[0] = ring_.one();
    return v;
  }
  /// Residue of x (reduced when d = 1).
  Vec x() const {
    if (degree() == 1) return Vec{neg_f_[0]};
    Vec v = zero();
    v[1] = ring_.one();
    return v;
  }

  Vec mul(const Vec& a, const Vec& b) const {
    const std::size_t d = degree();
    std::vector<typename Ring::acc> t(2 * d - 1, ring_.zero_acc());
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) ring_.mac(t[i + j], a[i], b[j]);
    }
    for (std::size_t k = 2 * d - 1; k-- > d;) {
      const elem c = ring_.reduce(t[k]);
      if (c == 0) continue;
      for (std::size_t i = 0; i < d; ++i) ring_.mac(t[k - d + i], c, neg_f_[i]);
    }
    Vec out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = ring_.reduce(t[i]);
    return out;
  }

  /// base^e by left-to-right binary exponentiation; at most 2*bitlen(e)
  /// ring multiplications, all of them tallied.
  Vec pow(const Vec& base, const Natural& e) const {
    const std::size_t bits = e.bit_length();
    if (bits == 0) return one();
    Vec acc = base;
    std::uint64_t mults = 0;
    for (std::size_t i = bits - 1; i-- > 0;) {
      acc = mul(acc, acc);
      ++mults;
      if (e.bit(i)) {
        acc = mul(acc, base);
        ++mults;
      }
    }
    count_ring_mults(mults);
    return acc;
  }

  Vec add(const Vec& a, const Vec& b) const {
    Vec out(degree());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ring_.add(a[i], b[i]);
    return out;
  }
  Vec sub(const Vec& a, const Vec& b) const {
    Vec out(degree());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ring_.sub(a[i], b[i]);
    return out;
  }
  Vec add_one(Vec a) const {
    a[0] = ring_.add(a[0], ring_.one());
    return a;
  }
  bool is_zero(const Vec& a) const {
    for (const auto& c : a)
      if (c != 0) return false;
    return true;
  }

  /// Coefficients c_0..c_k (k < d) into a length-d vector.
  Vec lift(const std::vector<Natural>& coeffs) const {
    Vec v = zero();
    for (std::size_t i = 0; i < coeffs.size() && i < v.size(); ++i) v[i] = ring_.from(coeffs[i]);
    return v;
  }
  std::vector<Natural> lower(const Vec& v) const {
    std::vector<Natural> out;
    out.reserve(v.size());
    for (const auto& c : v) out.push_back(ring_.to_natural(c));
    return out;
  }

 private:
  Ring ring_;
  Vec neg_f_;
};

}  // namespace pfprime::detail
