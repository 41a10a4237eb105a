#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "smallres/errors.hpp"
#include "smallres/sweep.hpp"

using namespace smallres;
namespace fs = std::filesystem;

namespace {

const Table& section(const ReportEnvelope& env, const std::string& name) {
  for (const auto& t : env.sections)
    if (t.name == name) return t;
  throw std::runtime_error("no section " + name);
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) return i;
  throw std::runtime_error("no column " + name);
}

}  // namespace

TEST(SweepConfig, ParsesEveryKey) {
  const auto cfg = parse_sweep_config(R"(
# density run
campaign   = density
name       = dens
p_lo       = 10^5
p_hi       = 200000
sample     = 12
k          = 3
q          = 4
a          = 3
target     = residue
epsilon    = 0.25
x_rule     = fixed
x          = 5000
scan_limit = 10^6
output_dir = out/here
workers    = 3
)");
  EXPECT_EQ(cfg.campaign, Campaign::Density);
  EXPECT_EQ(cfg.name, "dens");
  EXPECT_EQ(cfg.p_lo, 100000u);
  EXPECT_EQ(cfg.p_hi, 200000u);
  EXPECT_EQ(cfg.sample, 12u);
  EXPECT_EQ(cfg.ks, std::vector<std::uint64_t>{3});
  EXPECT_EQ(cfg.q, std::optional<std::uint64_t>(4));
  EXPECT_EQ(cfg.a, 3u);
  EXPECT_EQ(cfg.target, Verdict::Residue);
  EXPECT_DOUBLE_EQ(cfg.epsilon, 0.25);
  EXPECT_EQ(cfg.x_rule, XRule::Fixed);
  EXPECT_DOUBLE_EQ(cfg.x, 5000);
  EXPECT_EQ(cfg.scan_limit, 1000000u);
  EXPECT_EQ(cfg.output_dir, fs::path("out/here"));
  EXPECT_EQ(cfg.workers, 3u);
}

TEST(SweepConfig, Defaults) {
  const auto cfg = parse_sweep_config("campaign = patterns\nprimes = 41, 101\n", 5);
  EXPECT_EQ(cfg.name, "patterns");
  EXPECT_EQ(cfg.workers, 5u);
  EXPECT_EQ(cfg.primes, (std::vector<std::uint64_t>{41, 101}));
  EXPECT_EQ(cfg.output_dir, fs::path("reports"));
}

TEST(SweepConfig, Rejects) {
  for (const char* bad : {"colour = red", "campaign = nope", "p_lo = 1\np_lo = 2", "just text",
                          "k = 1", "epsilon = -1", "x_rule = fixed", "workers = 0", "name = a/b",
                          "target = maybe", "p_hi = 2*10^5", "q = 0"})
    EXPECT_THROW(parse_sweep_config(bad), UsageError) << bad;
  EXPECT_THROW(load_sweep_config("/nonexistent/sweep.cfg"), UsageError);
}

TEST(Sweep, EmptyRangeGivesValidEnvelope) {
  auto cfg = parse_sweep_config("campaign = theorem\np_lo = 24\np_hi = 28\n");
  std::size_t violations = 7;
  const auto env = build_sweep_report(cfg, &violations);
  EXPECT_EQ(violations, 0u);
  EXPECT_EQ(section(env, "searches").rows.size(), 0u);
  const auto doc = nlohmann::ordered_json::parse(to_json(env));
  EXPECT_EQ(doc["sections"].size(), 3u);
}

TEST(Sweep, TheoremRangeHasNoViolations) {
  auto cfg = parse_sweep_config("campaign = theorem\np_lo = 100000\np_hi = 200000\nsample = 300\n");
  std::size_t violations = 1;
  const auto env = build_sweep_report(cfg, &violations);
  EXPECT_EQ(violations, 0u);
  EXPECT_TRUE(section(env, "counterexamples").rows.empty());
  EXPECT_EQ(section(env, "summary").rows[0][0].csv(), "300");
}

TEST(Sweep, DensityRows) {
  auto cfg = parse_sweep_config("campaign = density\nprimes = 101, 103, 1009\nk = 3\n");
  const auto env = build_sweep_report(cfg);
  const auto& s = section(env, "samples");
  ASSERT_EQ(s.rows.size(), 2u);  // 3 does not divide 102
  EXPECT_EQ(s.rows[0][column(s, "p")].csv(), "103");
  EXPECT_EQ(section(env, "summary").rows[0][column(section(env, "summary"), "skipped")].csv(), "1");
}

TEST(Sweep, ExpSumRatios) {
  auto cfg = parse_sweep_config("campaign = expsum\nprimes = 1009\n");
  const auto env = build_sweep_report(cfg);
  const auto& t = section(env, "ratios");
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_LT(std::stod(t.rows[0][column(t, "max_ratio")].csv()), 1.0);
  EXPECT_EQ(t.rows[0][column(t, "worst_b")].csv(), "146");
  EXPECT_THROW(build_sweep_report(parse_sweep_config("campaign = expsum\nprimes = 100003\n")),
               ResourceError);
}

TEST(Sweep, PatternsRows) {
  auto cfg = parse_sweep_config("campaign = patterns\nprimes = 41\n");
  const auto env = build_sweep_report(cfg);
  const auto& t = section(env, "pairs");
  EXPECT_EQ(t.rows[0][column(t, "RR")].csv(), "9");
  EXPECT_EQ(t.rows[0][column(t, "twin_total")].csv(), "5");
  EXPECT_EQ(section(env, "refined").rows.size(), 4u);
  EXPECT_THROW(build_sweep_report(parse_sweep_config("campaign = patterns\nprimes = 15\n")), DomainError);
}

TEST(Sweep, WritesReportsAndIsStable) {
  const auto dir = fs::temp_directory_path() / "smallres-sweep-test";
  fs::remove_all(dir);
  setenv("SOURCE_DATE_EPOCH", "0", 1);
  auto cfg = parse_sweep_config("campaign = patterns\nprimes = 41, 101\noutput_dir = " + dir.string() + "\n");
  const auto a = run_sweep(cfg);
  std::ifstream in1(dir / "patterns.json");
  const std::string first((std::istreambuf_iterator<char>(in1)), {});
  cfg.workers = 3;
  run_sweep(cfg);
  unsetenv("SOURCE_DATE_EPOCH");
  std::ifstream in2(dir / "patterns.json");
  const std::string second((std::istreambuf_iterator<char>(in2)), {});
  EXPECT_EQ(a.files.size(), 3u);
  EXPECT_EQ(first, second);
  fs::remove_all(dir);
}

TEST(Sweep, UnwritableOutputDir) {
  const auto dir = fs::temp_directory_path() / "smallres-sweep-blocked";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "file") << "x";
  auto cfg = parse_sweep_config("campaign = patterns\nprimes = 41\n");
  cfg.output_dir = dir / "file" / "out";
  EXPECT_THROW(run_sweep(cfg), ResourceError);
  fs::remove_all(dir);
}
