#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "smallres/errors.hpp"
#include "smallres/report.hpp"

using namespace smallres;
namespace fs = std::filesystem;

namespace {

Table sample_table() {
  Table t{"demo", {"n", "x", "label", "big", "ok", "maybe"}, {}};
  t.add({Cell::integer(1), Cell::real(0.5), Cell::text("plain"), Cell::big(BigInt("1000000000000000000000007")),
         Cell::boolean(true), Cell::null()});
  t.add({Cell::integer(-2), Cell::real(1.0 / 3.0), Cell::text("a,\"b\""), Cell::big(BigInt(3)),
         Cell::boolean(false), Cell::maybe_integer(std::optional<int>(4))});
  return t;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("smallres-test-" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Report, FormatReal) {
  EXPECT_EQ(format_real(3568.927460343276), "3568.93");
  EXPECT_EQ(format_real(0.5), "0.5");
  EXPECT_EQ(format_real(1e-7), "1e-07");
  EXPECT_EQ(format_real(2.0), "2");
  EXPECT_EQ(format_real(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_real(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Report, CsvQuotingAndLineEnds) {
  EXPECT_EQ(to_csv(sample_table()),
            "n,x,label,big,ok,maybe\r\n"
            "1,0.5,plain,1000000000000000000000007,true,\r\n"
            "-2,0.333333,\"a,\"\"b\"\"\",3,false,4\r\n");
}

TEST(Report, RowWidthChecked) {
  Table t{"t", {"a", "b"}, {}};
  EXPECT_THROW(t.add({Cell::integer(1)}), std::logic_error);
}

TEST(Report, Sha256) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Report, TimestampHonoursSourceDateEpoch) {
  setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  EXPECT_EQ(report_timestamp(), "2023-11-14T22:13:20Z");
  unsetenv("SOURCE_DATE_EPOCH");
  EXPECT_EQ(report_timestamp().size(), 20u);
}

TEST(Report, JsonLayout) {
  auto env = make_envelope({sample_table()});
  env.generated_at = "2000-01-01T00:00:00Z";
  const auto doc = nlohmann::ordered_json::parse(to_json(env));
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "generated_at", "sections"}));
  EXPECT_EQ(doc["schema_version"], "1.0");
  const auto& s = doc["sections"][0];
  EXPECT_EQ(s["name"], "demo");
  EXPECT_EQ(s["sha256"], sha256_hex(to_csv(sample_table())));
  EXPECT_EQ(s["rows"][0]["big"], "1000000000000000000000007");
  EXPECT_EQ(s["rows"][0]["n"], 1);
  EXPECT_TRUE(s["rows"][0]["maybe"].is_null());
  EXPECT_EQ(s["rows"][1]["ok"], false);
  EXPECT_DOUBLE_EQ(s["rows"][1]["x"].get<double>(), 0.333333);
  std::vector<std::string> row_keys;
  for (auto it = s["rows"][1].begin(); it != s["rows"][1].end(); ++it) row_keys.push_back(it.key());
  EXPECT_EQ(row_keys, sample_table().columns);
}

TEST(Report, WritesByteStableFiles) {
  const auto dir = scratch("stable");
  setenv("SOURCE_DATE_EPOCH", "0", 1);
  const auto first = write_report(dir / "a", "run", make_envelope({sample_table()}));
  const auto second = write_report(dir / "b", "run", make_envelope({sample_table()}));
  unsetenv("SOURCE_DATE_EPOCH");
  ASSERT_EQ(first.size(), 2u);
  ASSERT_EQ(second.size(), 2u);
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].filename(), second[i].filename());
    EXPECT_EQ(slurp(first[i]), slurp(second[i]));
  }
  EXPECT_TRUE(fs::exists(dir / "a" / "run-demo.csv"));
  EXPECT_TRUE(fs::exists(dir / "a" / "run.json"));
  EXPECT_EQ(slurp(dir / "a" / "run-demo.csv"), to_csv(sample_table()));
  fs::remove_all(dir);
}

TEST(Report, UnwritableDirectory) {
  const auto dir = scratch("blocked");
  fs::create_directories(dir);
  std::ofstream(dir / "file") << "x";
  EXPECT_THROW(write_report(dir / "file" / "sub", "run", make_envelope({})), ResourceError);
  fs::remove_all(dir);
}
