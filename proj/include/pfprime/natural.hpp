#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pfprime {

/// Raised when an operation is called outside its documented domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision unsigned integer.
///
/// Thin value type over boost::multiprecision::cpp_int that refuses to go
/// negative: subtraction below zero throws DomainError.
class Natural {
 public:
  Natural() = default;
  Natural(std::uint64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Natural(int v) : v_(v) {             // NOLINT(google-explicit-constructor)
    if (v < 0) throw DomainError("Natural: negative value");
  }
  explicit Natural(const BigInt& v) : v_(v) {
    if (v.sign() < 0) throw DomainError("Natural: negative value");
  }
  explicit Natural(BigInt&& v) : v_(std::move(v)) {
    if (v_.sign() < 0) throw DomainError("Natural: negative value");
  }

  /// Parses a non-empty string of decimal digits.
  static Natural parse(std::string_view text) {
    if (text.empty()) throw DomainError("Natural: empty string");
    BigInt v = 0;
    for (char c : text) {
      if (c < '0' || c > '9') throw DomainError("Natural: not a decimal digit in '" + std::string(text) + "'");
      v *= 10;
      v += c - '0';
    }
    return Natural(std::move(v));
  }

  const BigInt& raw() const noexcept { return v_; }

  std::string str() const { return v_.str(); }

  bool is_zero() const noexcept { return v_.is_zero(); }
  bool is_odd() const { return bit_test(v_, 0); }
  bool is_even() const { return !is_odd(); }

  /// Number of significant bits; 0 for zero.
  std::size_t bit_length() const {
    return v_.is_zero() ? 0 : static_cast<std::size_t>(msb(v_)) + 1;
  }
  bool bit(std::size_t i) const { return bit_test(v_, static_cast<unsigned>(i)); }

  bool fits_u64() const { return v_ <= std::numeric_limits<std::uint64_t>::max(); }
  std::uint64_t to_u64() const {
    if (!fits_u64()) throw DomainError("Natural: value exceeds 64 bits");
    return static_cast<std::uint64_t>(v_);
  }

  Natural& operator+=(const Natural& o) { v_ += o.v_; return *this; }
  Natural& operator-=(const Natural& o) {
    if (v_ < o.v_) throw DomainError("Natural: subtraction underflow");
    v_ -= o.v_;
    return *this;
  }
  Natural& operator*=(const Natural& o) { v_ *= o.v_; return *this; }
  Natural& operator/=(const Natural& o) {
    if (o.is_zero()) throw DomainError("Natural: division by zero");
    v_ /= o.v_;
    return *this;
  }
  Natural& operator%=(const Natural& o) {
    if (o.is_zero()) throw DomainError("Natural: modulo by zero");
    v_ %= o.v_;
    return *this;
  }
  Natural& operator<<=(unsigned s) { v_ <<= s; return *this; }
  Natural& operator>>=(unsigned s) { v_ >>= s; return *this; }
  Natural& operator++() { ++v_; return *this; }

  friend Natural operator+(Natural a, const Natural& b) { return a += b; }
  friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
  friend Natural operator*(Natural a, const Natural& b) { return a *= b; }
  friend Natural operator/(Natural a, const Natural& b) { return a /= b; }
  friend Natural operator%(Natural a, const Natural& b) { return a %= b; }
  friend Natural operator<<(Natural a, unsigned s) { return a <<= s; }
  friend Natural operator>>(Natural a, unsigned s) { return a >>= s; }

  friend bool operator==(const Natural& a, const Natural& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    const int c = a.v_.compare(b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.v_; }

 private:
  BigInt v_ = 0;
};

}  // namespace pfprime

template <>
struct std::hash<pfprime::Natural> {
  std::size_t operator()(const pfprime::Natural& n) const {
    return boost::multiprecision::hash_value(n.raw());
  }
};
