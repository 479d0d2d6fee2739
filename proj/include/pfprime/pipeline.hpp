#pragma once

#include "pfprime/primality.hpp"
#include "pfprime/pseudofield.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pfprime {

using Rational = boost::multiprecision::cpp_rational;

/// Positive rational exponent, written as a decimal ("2", "1.85") or a
/// fraction ("46/25").
inline Rational parse_exponent(std::string_view text) {
  const std::string s(text);
  Rational value;
  try {
    if (const auto slash = s.find('/'); slash != std::string::npos) {
      value = Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } else if (const auto dot = s.find('.'); dot != std::string::npos) {
      const std::string frac = s.substr(dot + 1);
      const std::string whole = s.substr(0, dot).empty() ? "0" : s.substr(0, dot);
      value = Rational(BigInt(whole + frac), pow(BigInt(10), static_cast<unsigned>(frac.size())));
    } else {
      value = Rational(BigInt(s));
    }
  } catch (const std::exception&) {
    throw DomainError("exponent: cannot parse '" + s + "'");
  }
  if (value <= 0) throw DomainError("exponent must be positive");
  return value;
}

/// ceil(L^c) computed exactly: the least D with D^den >= L^num.
inline std::uint64_t ceil_power(std::uint64_t base, const Rational& c) {
  if (c <= 0) throw DomainError("ceil_power: exponent must be positive");
  if (base <= 1) return base;
  const auto num = static_cast<unsigned>(numerator(c));
  const auto den = static_cast<unsigned>(denominator(c));
  const BigInt rhs = pow(BigInt(base), num);
  const double approx = std::pow(static_cast<double>(base), static_cast<double>(c));
  if (!(approx < 1e18)) throw DomainError("ceil_power: degree target too large");
  auto d = static_cast<std::uint64_t>(approx);
  d = d > 2 ? d - 2 : 0;
  while (pow(BigInt(d), den) < rhs) ++d;
  return d;
}

enum class FallbackPolicy { Fail, WeakRandomF };

struct PipelineConfig {
  Rational c = 2;
  std::optional<std::uint64_t> degree_override;
  FallbackPolicy fallback = FallbackPolicy::Fail;
  ConstructOptions construct;
};

struct PipelineRun {
  Verdict verdict;
  std::uint64_t target_degree = 0;
  std::optional<ModPoly> f;
  std::optional<PeriodSystem> system;
};

/// Target degree max(2, ceil(floor(log2 N)^c)) unless overridden.
inline std::uint64_t pipeline_degree(const Natural& n, const PipelineConfig& cfg) {
  if (cfg.degree_override) {
    if (*cfg.degree_override < 2) throw DomainError("degree override must be >= 2");
    return *cfg.degree_override;
  }
  if (cfg.c <= 0) throw DomainError("exponent c must be positive");
  return std::max<std::uint64_t>(2, ceil_power(floor_log2(n), cfg.c));
}

inline PipelineRun full_pipeline_run(const Natural& n, const PipelineConfig& cfg, RngSeed seed) {
  if (n <= Natural(1)) throw DomainError("full_pipeline: N must be > 1");
  PipelineRun run;
  run.verdict.seed = seed;
  if (n.is_even()) {
    if (n == Natural(2)) {
      run.verdict.outcome = Outcome::Prime;
    } else {
      run.verdict.outcome = Outcome::Composite;
      run.verdict.evidence = DivisorEvidence{Natural(2)};
    }
    return run;
  }
  const std::uint64_t target = pipeline_degree(n, cfg);
  run.target_degree = target;
  Rng rng(seed);

  std::string failure;
  if (n <= Natural(2 * target)) {
    failure = "N <= 2D: no polynomial construction for D = " + std::to_string(target);
  } else {
    ConstructionOutcome built = construct_poly_pipeline(n, target, cfg.construct);
    if (auto* ok = std::get_if<Constructed>(&built)) {
      run.f = ok->f;
      run.system = ok->system;
      run.verdict = combined_test(n, ok->f, rng, seed);
      return run;
    }
    if (auto* comp = std::get_if<CompositeDetected>(&built)) {
      run.verdict.outcome = Outcome::Composite;
      if (comp->divisor) {
        run.verdict.evidence = DivisorEvidence{*comp->divisor};
      } else {
        run.verdict.evidence = AxiomRefutation{comp->reason};
      }
      return run;
    }
    if (auto* fail = std::get_if<ConstructionFailed>(&built)) {
      failure = fail->note;
    } else {
      failure = "no period system with degree in [" + std::to_string(target) + ", " + std::to_string(2 * target) + ")";
    }
  }

  if (cfg.fallback == FallbackPolicy::Fail) {
    run.verdict.outcome = Outcome::Unknown;
    run.verdict.evidence = ConstructionFailure{failure};
    return run;
  }
  // deg f must stay below N for the AB stage
  const std::uint64_t cap = n.fits_u64() ? n.to_u64() - 1 : target;
  const ModPoly f = random_monic(static_cast<std::size_t>(std::min(target, cap)), n, rng);
  run.f = f;
  run.verdict = combined_test(n, f, rng, seed);
  run.verdict.fallback_used = true;
  if (run.verdict.outcome != Outcome::Composite) run.verdict.evidence = ConstructionFailure{failure};
  return run;
}

inline Verdict full_pipeline(const Natural& n, const PipelineConfig& cfg, RngSeed seed) {
  return full_pipeline_run(n, cfg, seed).verdict;
}

}  // namespace pfprime
