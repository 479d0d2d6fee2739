#pragma once

#include "pfprime/natural.hpp"

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <string_view>

namespace pfprime {

/// 64-bit seed. Equal seeds give identical draw sequences on every platform:
/// draws use only the raw output of std::mt19937_64, which the standard
/// specifies exactly, never std::uniform_int_distribution.
struct RngSeed {
  std::uint64_t value = 0;

  /// Accepts 1..16 hex digits, with or without a 0x prefix.
  static RngSeed parse_hex(std::string_view text) {
    if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
    if (text.empty() || text.size() > 16) throw DomainError("seed: expected 1 to 16 hex digits");
    std::uint64_t v = 0;
    for (char c : text) {
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else throw DomainError("seed: invalid hex digit");
      v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    return RngSeed{v};
  }

  std::string hex() const {
    std::ostringstream os;
    os << std::hex << value;
    return os.str();
  }

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  std::uint64_t next_word() { return engine_(); }

  /// Uniform integer in [0, bound) by rejection sampling over whole words.
  Natural uniform_below(const Natural& bound) {
    if (bound.is_zero()) throw DomainError("uniform_below: empty range");
    if (bound == Natural(1)) return Natural(0);
    const Natural top = bound - Natural(1);
    const std::size_t bits = top.bit_length();
    const std::size_t words = (bits + 63) / 64;
    const unsigned spare = static_cast<unsigned>(words * 64 - bits);
    for (;;) {
      BigInt v = 0;
      for (std::size_t i = 0; i < words; ++i) {
        std::uint64_t w = engine_();
        if (i == 0 && spare > 0) w >>= spare;  // trim the most significant word
        v <<= 64;
        v |= w;
      }
      if (v <= top.raw()) return Natural(std::move(v));
    }
  }

  /// Uniform integer in [lo, hi].
  Natural uniform_between(const Natural& lo, const Natural& hi) {
    if (hi < lo) throw DomainError("uniform_between: empty range");
    return lo + uniform_below(hi - lo + Natural(1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pfprime
