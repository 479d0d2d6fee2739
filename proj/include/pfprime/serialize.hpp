#pragma once

#include "pfprime/census.hpp"
#include "pfprime/primality.hpp"

#include <json.hpp>

namespace pfprime {

namespace detail {

inline nlohmann::json natural_json(const Natural& n) {
  if (n.fits_u64()) return n.to_u64();
  return n.str();
}

inline Natural natural_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Natural::parse(j.get<std::string>());
  return Natural(j.get<std::uint64_t>());
}

}  // namespace detail

inline nlohmann::json to_json(const CensusReport& r) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& [p, e] : r.factorization) factors.push_back({detail::natural_json(p), e});
  return {{"n", detail::natural_json(r.subject)},
          {"total", detail::natural_json(r.total)},
          {"failing", detail::natural_json(r.failing)},
          {"fraction", rational_string(r.fraction)},
          {"bound", rational_string(r.bound)},
          {"bound_kind", r.kind == BoundKind::Upper ? "upper" : "lower"},
          {"factors", factors}};
}

inline CensusReport census_from_json(const nlohmann::json& j) {
  CensusReport r;
  r.subject = detail::natural_from_json(j.at("n"));
  r.total = detail::natural_from_json(j.at("total"));
  r.failing = detail::natural_from_json(j.at("failing"));
  r.fraction = parse_rational_string(j.at("fraction").get<std::string>());
  r.bound = parse_rational_string(j.at("bound").get<std::string>());
  r.kind = j.value("bound_kind", std::string("upper")) == "lower" ? BoundKind::Lower : BoundKind::Upper;
  for (const auto& pe : j.at("factors")) r.factorization.emplace_back(detail::natural_from_json(pe.at(0)), pe.at(1).get<std::uint64_t>());
  return r;
}

inline nlohmann::json to_json(const Natural& n, const Verdict& v) {
  nlohmann::json j{{"n", n.str()}, {"verdict", to_string(v.outcome)}, {"seed", v.seed.hex()},
                   {"rounds_used", v.rounds_used}, {"fallback_used", v.fallback_used}};
  std::visit(
      [&](const auto& e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, DivisorEvidence>) {
          j["evidence"] = {{"kind", "divisor"}, {"value", e.divisor.str()}};
        } else if constexpr (std::is_same_v<E, WitnessEvidence>) {
          j["evidence"] = {{"kind", "mr_witness"}, {"value", e.base.str()}};
        } else if constexpr (std::is_same_v<E, PolynomialEvidence>) {
          j["evidence"] = {{"kind", "ab_polynomial"}, {"value", e.h.to_string()}};
        } else if constexpr (std::is_same_v<E, AxiomRefutation>) {
          j["evidence"] = {{"kind", "axiom_refutation"}, {"value", e.note}};
        } else if constexpr (std::is_same_v<E, ConstructionFailure>) {
          j["evidence"] = {{"kind", "construction_failure"}, {"value", e.note}};
        } else {
          j["evidence"] = nullptr;
        }
      },
      v.evidence);
  return j;
}

}  // namespace pfprime
