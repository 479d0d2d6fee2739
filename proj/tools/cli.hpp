#pragma once

#include "pfprime/pfprime.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace pfprime::cli {

enum Exit : int {
  kPrime = 0,
  kComposite = 1,
  kUnknown = 2,
  kNotFound = 3,
  kBoundViolated = 5,
  kUsage = 64,
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

/// Polynomial file: "N; c0,c1,...,cd" with the modulus re-based onto N.
inline ModPoly load_poly(const std::string& path, const Natural& n) {
  const ModPoly raw = ModPoly::parse(read_file(path));
  return raw.modulus() == n ? raw : ModPoly(n, raw.coeffs());
}

inline std::string evidence_text(const Evidence& e) {
  return std::visit(
      [](const auto& x) -> std::string {
        using E = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<E, DivisorEvidence>) return "divisor " + x.divisor.str();
        else if constexpr (std::is_same_v<E, WitnessEvidence>) return "mr_witness " + x.base.str();
        else if constexpr (std::is_same_v<E, PolynomialEvidence>) return "ab_polynomial " + x.h.to_string();
        else if constexpr (std::is_same_v<E, AxiomRefutation>) return "axiom_refutation " + x.note;
        else if constexpr (std::is_same_v<E, ConstructionFailure>) return "construction_failure " + x.note;
        else return "";
      },
      e);
}

inline int exit_for(Outcome o) {
  switch (o) {
    case Outcome::Prime: return kPrime;
    case Outcome::Composite: return kComposite;
    case Outcome::Unknown: return kUnknown;
  }
  return kUnknown;
}

inline std::string report_text(const CensusReport& r) {
  std::ostringstream os;
  os << "n=" << r.subject << " failing=" << r.failing << " total=" << r.total
     << " fraction=" << rational_string(r.fraction) << " bound" << (r.kind == BoundKind::Upper ? "<=" : ">=")
     << rational_string(r.bound) << (r.bound_holds() ? " ok" : " VIOLATED");
  return os.str();
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

inline int run_isprime(const std::string& n_text, const std::string& c_text, std::optional<std::uint64_t> degree,
                       const std::string& fallback, const std::string& seed_text, bool json, Streams io) {
  const Natural n = Natural::parse(n_text);
  if (n <= Natural(1)) throw DomainError("N must be > 1");
  PipelineConfig cfg;
  cfg.c = parse_exponent(c_text);
  cfg.degree_override = degree;
  cfg.fallback = fallback == "weak" ? FallbackPolicy::WeakRandomF : FallbackPolicy::Fail;
  const RngSeed seed = RngSeed::parse_hex(seed_text);
  const Verdict v = full_pipeline(n, cfg, seed);
  if (json) {
    io.out << to_json(n, v).dump() << '\n';
  } else {
    io.out << n << ' ' << to_string(v.outcome);
    if (const auto ev = evidence_text(v.evidence); !ev.empty()) io.out << ' ' << ev;
    io.out << '\n';
  }
  return exit_for(v.outcome);
}

inline int run_construct(const std::string& n_text, std::uint64_t target, const std::string& out_path,
                         const std::string& bounds, bool check_axioms, Streams io) {
  const Natural n = Natural::parse(n_text);
  if (target < 2 || n <= Natural(2 * target)) throw DomainError("need D >= 2 and N > 2D");
  ConstructOptions opts;
  opts.check_axioms = check_axioms;
  if (bounds == "asymptotic") opts.bounds = PeriodSearchBounds::asymptotic(target);
  const ConstructionOutcome res = construct_poly_pipeline(n, target, opts);
  if (const auto* ok = std::get_if<Constructed>(&res)) {
    write_file(out_path, ok->f.to_string() + "\n");
    write_file(out_path + ".pairs", to_sidecar(ok->system));
    io.out << "degree " << ok->f.degree() << '\n';
    return 0;
  }
  if (const auto* comp = std::get_if<CompositeDetected>(&res)) {
    io.out << "composite";
    if (comp->divisor) io.out << " factor " << *comp->divisor;
    io.out << " (" << comp->reason << ")\n";
    return kComposite;
  }
  if (const auto* fail = std::get_if<ConstructionFailed>(&res)) {
    io.out << "not_found (" << fail->note << ")\n";
    return kNotFound;
  }
  io.out << "not_found\n";
  return kNotFound;
}

inline int emit_reports(const std::vector<CensusReport>& reports, bool json, Streams io) {
  bool ok = true;
  for (const auto& r : reports) {
    io.out << (json ? to_json(r).dump() : report_text(r)) << '\n';
    ok = ok && r.bound_holds();
  }
  return ok ? 0 : kBoundViolated;
}

inline std::vector<std::uint64_t> parse_bits(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Natural::parse(item).to_u64());
  if (out.empty()) throw DomainError("--bits: empty list");
  return out;
}

/// Entry point shared by the executable and the tests; args exclude argv[0].
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Streams io{out, err};
  CLI::App app{"pseudofield primality tools"};
  app.require_subcommand(1);

  std::string n_text, c_text = "2.0", fallback = "fail", seed_text = "0", out_path, bounds = "desk";
  std::optional<std::uint64_t> degree;
  bool json = false, no_axioms = false;
  std::uint64_t target = 0;

  auto* isprime = app.add_subcommand("isprime", "run the full primality pipeline");
  isprime->add_option("N", n_text)->required();
  isprime->add_option("--c", c_text, "degree exponent, decimal or a/b");
  isprime->add_option("--degree", degree, "target degree override");
  isprime->add_option("--fallback", fallback)->check(CLI::IsMember({"fail", "weak"}));
  isprime->add_option("--seed", seed_text, "hex seed");
  isprime->add_flag("--json", json);

  auto* construct = app.add_subcommand("construct", "build a modulus polynomial of degree in [D, 2D)");
  construct->add_option("N", n_text)->required();
  construct->add_option("--D", target)->required();
  construct->add_option("--out", out_path)->required();
  construct->add_option("--bounds", bounds)->check(CLI::IsMember({"desk", "asymptotic"}));
  construct->add_flag("--no-axiom-check", no_axioms);

  auto* census = app.add_subcommand("census", "exhaustive failure-rate censuses");
  census->require_subcommand(1);
  unsigned jobs = 1;
  census->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  census->add_flag("--json", json);
  std::string p_text, f_path;
  std::uint64_t kmax = 0;
  auto* mr = census->add_subcommand("mr", "Miller-Rabin nonwitness census");
  mr->add_option("N", n_text)->required();
  auto* abp = census->add_subcommand("ab-p", "failing h modulo a prime factor p");
  abp->add_option("N", n_text)->required();
  abp->add_option("p", p_text)->required();
  abp->add_option("--f", f_path)->required();
  auto* abn = census->add_subcommand("ab-n", "failing h over Z/NZ");
  abn->add_option("N", n_text)->required();
  abn->add_option("--f", f_path)->required();
  auto* cls = census->add_subcommand("class", "scan N = (2k+1)(6k+1)");
  cls->add_option("--kmax", kmax)->required();
  for (auto* sub : {mr, abp, abn, cls}) {
    sub->add_flag("--json", json);
    sub->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  }

  auto* bench = app.add_subcommand("bench", "time Miller-Rabin against the combined test");
  std::string bits_text = "32,64,128";
  std::string bench_c = "1";
  std::uint64_t trials = 3;
  bench->add_option("--bits", bits_text, "comma-separated bit sizes");
  bench->add_option("--c", bench_c);
  bench->add_option("--trials", trials);
  bench->add_option("--seed", seed_text);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*isprime) return run_isprime(n_text, c_text, degree, fallback, seed_text, json, io);
    if (*construct) return run_construct(n_text, target, out_path, bounds, !no_axioms, io);
    if (*census) {
      const CensusLimits limits = CensusLimits::from_env();
      if (*mr) return emit_reports({mr_nonwitness_census(Natural::parse(n_text), jobs, limits)}, json, io);
      if (*abp) {
        const Natural n = Natural::parse(n_text);
        const Natural p = Natural::parse(p_text);
        return emit_reports({ab_failure_census_mod_p(n, p, load_poly(f_path, n), jobs, limits)}, json, io);
      }
      if (*abn) {
        const Natural n = Natural::parse(n_text);
        return emit_reports({ab_failure_census_mod_N(n, load_poly(f_path, n), jobs, limits)}, json, io);
      }
      if (*cls) {
        bool ok = true;
        std::vector<CensusReport> reports;
        for (const auto& e : heuristic_class_scan(kmax, jobs, limits)) {
          ok = ok && e.holds();
          reports.push_back(e.report);
        }
        const int code = emit_reports(reports, json, io);
        return ok ? code : kBoundViolated;
      }
    }
    if (*bench) {
      BenchConfig cfg;
      cfg.bits = parse_bits(bits_text);
      cfg.c = parse_exponent(bench_c);
      cfg.trials = trials;
      cfg.seed = RngSeed::parse_hex(seed_text);
      out << bench_csv(run_bench(cfg));
      return 0;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace pfprime::cli
