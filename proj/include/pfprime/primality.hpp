#pragma once

#include "pfprime/modpoly.hpp"
#include "pfprime/natural.hpp"
#include "pfprime/ring_arith.hpp"
#include "pfprime/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace pfprime {

enum class Outcome { Prime, Composite, Unknown };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Prime: return "PRIME";
    case Outcome::Composite: return "COMPOSITE";
    case Outcome::Unknown: return "UNKNOWN";
  }
  return "?";
}

struct DivisorEvidence {
  Natural divisor;
  friend bool operator==(const DivisorEvidence&, const DivisorEvidence&) = default;
};
struct WitnessEvidence {
  Natural base;
  friend bool operator==(const WitnessEvidence&, const WitnessEvidence&) = default;
};
struct PolynomialEvidence {
  ModPoly h;
  friend bool operator==(const PolynomialEvidence&, const PolynomialEvidence&) = default;
};
/// N was shown composite because a pseudofield built for it violates an
/// axiom that holds for every prime; no explicit divisor is known.
struct AxiomRefutation {
  std::string note;
  friend bool operator==(const AxiomRefutation&, const AxiomRefutation&) = default;
};
struct ConstructionFailure {
  std::string note;
  friend bool operator==(const ConstructionFailure&, const ConstructionFailure&) = default;
};

using Evidence = std::variant<std::monostate, DivisorEvidence, WitnessEvidence, PolynomialEvidence, AxiomRefutation,
                              ConstructionFailure>;

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  Evidence evidence;
  RngSeed seed;
  std::uint64_t rounds_used = 0;  // Miller-Rabin bases drawn
  bool fallback_used = false;     // f came from the weak random fallback

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Smallest a in [2, floor(log2 N)] dividing N.
inline std::optional<Natural> trial_division_stage(const Natural& n) {
  if (n <= Natural(1)) throw DomainError("trial_division_stage: N must be > 1");
  const std::uint64_t limit = floor_log2(n);
  for (std::uint64_t a = 2; a <= limit; ++a) {
    if ((n % Natural(a)).is_zero()) return Natural(a);
  }
  return std::nullopt;
}

enum class MrRound { ProbablePrime, Witness };

/// One Miller-Rabin round with base a. With N - 1 = 2^s t, t odd, the base is
/// a nonwitness iff a^t = 1 or a^(2^i t) = -1 for some 0 <= i <= s-1.
inline MrRound miller_rabin_round(const Natural& n, const Natural& a) {
  if (n <= Natural(2) || n.is_even()) throw DomainError("miller_rabin_round: N must be odd and > 2");
  if (a.is_zero() || a >= n) throw DomainError("miller_rabin_round: base must lie in [1, N-1]");
  const Natural n1 = n - Natural(1);
  const auto [s, t] = decompose_two_power(n1);
  Natural x = mod_pow(a, t, n);
  if (x == Natural(1) || x == n1) return MrRound::ProbablePrime;
  for (std::uint64_t i = 1; i < s; ++i) {
    x = mod_pow(x, Natural(2), n);
    if (x == n1) return MrRound::ProbablePrime;
  }
  return MrRound::Witness;
}

inline Verdict miller_rabin(const Natural& n, std::uint64_t rounds, Rng& rng, RngSeed seed = {}) {
  if (n <= Natural(1)) throw DomainError("miller_rabin: N must be > 1");
  Verdict v;
  v.seed = seed;
  if (n == Natural(2)) {
    v.outcome = Outcome::Prime;
    return v;
  }
  if (n.is_even()) {
    v.outcome = Outcome::Composite;
    v.evidence = DivisorEvidence{Natural(2)};
    return v;
  }
  const Natural top = n - Natural(1);
  for (std::uint64_t i = 0; i < rounds; ++i) {
    const Natural a = rng.uniform_between(Natural(1), top);
    ++v.rounds_used;
    if (miller_rabin_round(n, a) == MrRound::Witness) {
      v.outcome = Outcome::Composite;
      v.evidence = WitnessEvidence{a};
      return v;
    }
  }
  v.outcome = Outcome::Prime;
  return v;
}

inline Verdict miller_rabin(const Natural& n, std::uint64_t rounds, RngSeed seed) {
  Rng rng(seed);
  return miller_rabin(n, rounds, rng, seed);
}

namespace detail {

inline void require_ab_inputs(const Natural& n, const ModPoly& f) {
  if (n <= Natural(1)) throw DomainError("ab_test: N must be > 1");
  if (f.modulus() != n) throw DomainError("ab_test: f must be a polynomial over Z/NZ");
  if (!f.is_monic()) throw DomainError("ab_test: f must be monic");
  if (f.degree() < 1 || Natural(static_cast<std::uint64_t>(f.degree())) >= n)
    throw DomainError("ab_test: need 1 <= deg f < N");
}

/// True iff (h+1)^N == h^N + 1 in (Z/NZ[x])/(f).
inline bool ab_identity_holds(const Natural& n, const ModPoly& h, const ModPoly& f) {
  return with_residue_ring(f, [&](const auto& rr) {
    const auto hv = rr.lift(h.coeffs());
    const auto lhs = rr.pow(rr.add_one(hv), n);
    const auto rhs = rr.add_one(rr.pow(hv, n));
    return lhs == rhs;
  });
}

}  // namespace detail

/// Agrawal-Biswas test with a fixed modulus polynomial f and a random
/// polynomial h of degree < deg f, preceded by trial division up to log2 N.
inline Verdict ab_test(const Natural& n, const ModPoly& f, Rng& rng, RngSeed seed = {}) {
  detail::require_ab_inputs(n, f);
  Verdict v;
  v.seed = seed;
  if (auto d = trial_division_stage(n)) {
    v.outcome = Outcome::Composite;
    v.evidence = DivisorEvidence{*d};
    return v;
  }
  const ModPoly h = random_poly(static_cast<std::size_t>(f.degree()), n, rng);
  if (detail::ab_identity_holds(n, h, f)) {
    v.outcome = Outcome::Prime;
  } else {
    v.outcome = Outcome::Composite;
    v.evidence = PolynomialEvidence{h};
  }
  return v;
}

inline Verdict ab_test(const Natural& n, const ModPoly& f, RngSeed seed) {
  Rng rng(seed);
  return ab_test(n, f, rng, seed);
}

/// deg f single-base Miller-Rabin rounds, then one Agrawal-Biswas round.
inline Verdict combined_test(const Natural& n, const ModPoly& f, Rng& rng, RngSeed seed = {}) {
  detail::require_ab_inputs(n, f);
  const auto rounds = static_cast<std::uint64_t>(f.degree());
  std::uint64_t used = 0;
  for (std::uint64_t i = 0; i < rounds; ++i) {
    Verdict mr = miller_rabin(n, 1, rng, seed);
    used += mr.rounds_used;
    if (mr.outcome == Outcome::Composite) {
      mr.rounds_used = used;
      return mr;
    }
  }
  Verdict v = ab_test(n, f, rng, seed);
  v.rounds_used = used;
  return v;
}

inline Verdict combined_test(const Natural& n, const ModPoly& f, RngSeed seed) {
  Rng rng(seed);
  return combined_test(n, f, rng, seed);
}

/// Re-checks the certificate attached to a COMPOSITE verdict. Verdicts of
/// any other outcome, and composite verdicts without a checkable
/// certificate, return false.
inline bool evidence_certifies_composite(const Natural& n, const std::optional<ModPoly>& f, const Verdict& v) {
  if (v.outcome != Outcome::Composite) return false;
  if (const auto* d = std::get_if<DivisorEvidence>(&v.evidence)) {
    return d->divisor > Natural(1) && d->divisor < n && (n % d->divisor).is_zero();
  }
  if (const auto* w = std::get_if<WitnessEvidence>(&v.evidence)) {
    return n.is_odd() && n > Natural(2) && miller_rabin_round(n, w->base) == MrRound::Witness;
  }
  if (const auto* p = std::get_if<PolynomialEvidence>(&v.evidence)) {
    return f.has_value() && !detail::ab_identity_holds(n, p->h, *f);
  }
  return false;
}

}  // namespace pfprime
