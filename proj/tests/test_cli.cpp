#include "cli.hpp"
#include "pfprime/bench.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace pfprime;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "pfprime_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(CliIsprime, VerdictsAndExitCodes) {
  const Invocation prime = invoke({"isprime", "97", "--degree", "4"});
  EXPECT_EQ(prime.code, 0);
  EXPECT_EQ(prime.out, "97 PRIME\n");
  const Invocation comp = invoke({"isprime", "341", "--degree", "6"});
  EXPECT_EQ(comp.code, 1);
  EXPECT_EQ(comp.out.rfind("341 COMPOSITE", 0), 0u);
  EXPECT_EQ(invoke({"isprime", "100"}).code, 1);
  EXPECT_EQ(invoke({"isprime", "2"}).code, 0);
}

TEST(CliIsprime, UsageErrors) {
  EXPECT_EQ(invoke({"isprime", "x"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"isprime", "1"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"isprime", "97", "--c", "0"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"isprime", "97", "--fallback", "maybe"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(invoke({}).code, cli::kUsage);
}

TEST(CliIsprime, JsonIsDeterministicPerSeed) {
  const Invocation a = invoke({"isprime", "1009", "--degree", "4", "--seed", "2a", "--json"});
  const Invocation b = invoke({"isprime", "1009", "--degree", "4", "--seed", "2a", "--json"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j.at("n"), "1009");
  EXPECT_EQ(j.at("verdict"), "PRIME");
  EXPECT_EQ(j.at("fallback_used"), false);
  EXPECT_TRUE(j.at("evidence").is_null());
  const auto c = nlohmann::json::parse(invoke({"isprime", "341", "--degree", "6", "--json"}).out);
  EXPECT_EQ(c.at("verdict"), "COMPOSITE");
  EXPECT_TRUE(c.at("evidence").contains("kind"));
}

TEST(CliIsprime, WeakFallbackIsReported) {
  // N <= 2D leaves no construction; the weak fallback still decides
  const Invocation r = invoke({"isprime", "7", "--degree", "4", "--fallback", "weak", "--json"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("fallback_used"), true);
  const Invocation strict = invoke({"isprime", "7", "--degree", "4"});
  EXPECT_EQ(strict.code, 2);
}

TEST(CliConstruct, WritesPolynomialAndPairs) {
  const auto path = scratch("f97.txt");
  const Invocation r = invoke({"construct", "97", "--D", "4", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const ModPoly f = ModPoly::parse(cli::read_file(path.string()));
  EXPECT_EQ(f.modulus(), Natural(97));
  EXPECT_GE(f.degree(), 4);
  EXPECT_LT(f.degree(), 8);
  const PeriodSystem sys = parse_sidecar(cli::read_file(path.string() + ".pairs"));
  EXPECT_EQ(system_degree(sys), static_cast<std::uint64_t>(f.degree()));
  EXPECT_EQ(r.out, "degree " + std::to_string(f.degree()) + "\n");
}

TEST(CliConstruct, CompositeAndUsage) {
  const auto path = scratch("f341.txt");
  EXPECT_EQ(invoke({"construct", "341", "--D", "15", "--out", path.string()}).code, 1);
  EXPECT_EQ(invoke({"construct", "9", "--D", "5", "--out", path.string()}).code, cli::kUsage);
  EXPECT_EQ(invoke({"construct", "97", "--D", "4"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"construct", "97", "--D", "4", "--out", path.string(), "--bounds", "tight"}).code, cli::kUsage);
}

TEST(CliCensus, MrAndClass) {
  const Invocation mr = invoke({"census", "mr", "341", "--json"});
  ASSERT_EQ(mr.code, 0);
  const CensusReport rep = census_from_json(nlohmann::json::parse(mr.out));
  EXPECT_EQ(rep.failing, Natural(50));
  EXPECT_EQ(rep.total, Natural(340));
  EXPECT_EQ(invoke({"census", "--jobs", "3", "mr", "341", "--json"}).out, mr.out);
  EXPECT_EQ(invoke({"census", "mr", "97"}).code, cli::kUsage);
  const Invocation cls = invoke({"census", "class", "--kmax", "12"});
  EXPECT_EQ(cls.code, 0);
  EXPECT_EQ(std::count(cls.out.begin(), cls.out.end(), '\n'), 4);
}

TEST(CliCensus, AbWithPolynomialFile) {
  const auto path = scratch("x2p1.txt");
  cli::write_file(path.string(), "15; 1,0,1\n");
  const Invocation p = invoke({"census", "ab-p", "15", "3", "--f", path.string(), "--json"});
  ASSERT_EQ(p.code, 0) << p.err;
  const auto jp = nlohmann::json::parse(p.out);
  EXPECT_EQ(jp.at("failing"), 3);
  EXPECT_EQ(jp.at("total"), 9);
  const Invocation n = invoke({"census", "ab-n", "15", "--f", path.string(), "--json"});
  ASSERT_EQ(n.code, 0) << n.err;
  EXPECT_EQ(nlohmann::json::parse(n.out).at("total"), 225);
  EXPECT_EQ(invoke({"census", "ab-p", "15", "7", "--f", path.string()}).code, cli::kUsage);
  EXPECT_EQ(invoke({"census", "ab-n", "15", "--f", scratch("missing.txt").string()}).code, cli::kUsage);
}

TEST(Bench, RatioAndEpsilon) {
  EXPECT_EQ(compute_ratio(Natural(1000), epsilon_log2_mr()), Rational(500));
  EXPECT_EQ(compute_ratio(Natural(847'000), Rational(-847)), Rational(1000));
  EXPECT_EQ(epsilon_log2_ab(15, 2, 64), Rational(-847));
  EXPECT_THROW(compute_ratio(Natural(1), Rational(0)), DomainError);
}

TEST(Bench, RandomPrimesHaveRequestedSize) {
  Rng rng(RngSeed{5});
  for (std::uint64_t bits : {8u, 32u, 65u, 128u}) {
    const Natural p = random_prime_bits(bits, rng);
    EXPECT_EQ(p.bit_length(), bits);
    EXPECT_EQ(miller_rabin(p, 20, rng, RngSeed{}).outcome, Outcome::Prime);
  }
}

TEST(Bench, CsvSchema) {
  const Invocation r = invoke({"bench", "--bits", "16,24", "--trials", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "bits,T_mr,T_ab,R_mr,R_ab");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].rfind("16,", 0), 0u);
  EXPECT_EQ(std::count(rows[1].begin(), rows[1].end(), ','), 4);
  EXPECT_EQ(invoke({"bench", "--bits", ""}).code, cli::kUsage);
}
