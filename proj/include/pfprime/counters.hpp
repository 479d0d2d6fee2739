#pragma once

#include <cstdint>

namespace pfprime {

/// Operation tallies for runtime-shape checks.
struct OpCounts {
  std::uint64_t modular_mults = 0;  // multiplications in Z/NZ performed by mod_pow
  std::uint64_t ring_mults = 0;     // multiplications in (Z/NZ[x])/(f) performed by poly_pow_mod
};

namespace detail {

struct CounterState {
  bool enabled = false;
  OpCounts counts;
};

inline CounterState& counter_state() {
  thread_local CounterState state;
  return state;
}

inline void count_modular_mults(std::uint64_t n) {
  auto& s = counter_state();
  if (s.enabled) s.counts.modular_mults += n;
}

inline void count_ring_mults(std::uint64_t n) {
  auto& s = counter_state();
  if (s.enabled) s.counts.ring_mults += n;
}

}  // namespace detail

/// Enables operation counting on the current thread for the lifetime of the
/// scope. Counting is off by default; scopes nest and each one sees only the
/// operations performed while it is the innermost.
class CountingScope {
 public:
  CountingScope() : saved_(detail::counter_state()) {
    detail::counter_state() = {true, {}};
  }
  ~CountingScope() {
    const OpCounts inner = detail::counter_state().counts;
    detail::counter_state() = saved_;
    if (saved_.enabled) {
      detail::counter_state().counts.modular_mults += inner.modular_mults;
      detail::counter_state().counts.ring_mults += inner.ring_mults;
    }
  }
  CountingScope(const CountingScope&) = delete;
  CountingScope& operator=(const CountingScope&) = delete;

  OpCounts counts() const { return detail::counter_state().counts; }

 private:
  detail::CounterState saved_;
};

}  // namespace pfprime
