#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lemni/cli.hpp"
#include "lemni/io.hpp"

namespace lemni {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "lemni");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, LinkageDefaults) {
  const CliRun r = run({"linkage", "--theta", "90"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("X = -0.666666667,0.471404521"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("A = -1,1.41421356"), std::string::npos) << r.out;
}

TEST(Cli, LinkageJson) {
  const CliRun r = run({"linkage", "--theta", "90", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["result"]["x"][0].get<double>(), -2.0 / 3, 1e-12);
  EXPECT_NEAR(j["checks"]["ox_times_oq"].get<double>(), 1.0, 1e-12);
  EXPECT_TRUE(j["contours"].empty());
}

TEST(Cli, NegativeFociAndScaledConfig) {
  const CliRun r = run({"area", "--foci", "-2,0,2,0", "--grid", "256"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("exact_area = 8"), std::string::npos) << r.out;
}

TEST(Cli, TraceCsvRoundTrips) {
  const CliRun r = run({"trace", "--grid", "64", "--threads", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto contours = contours_from_csv(r.out);
  ASSERT_EQ(contours.size(), 2u);
  EXPECT_TRUE(contours[0].closed && contours[1].closed);
}

TEST(Cli, TraceToFileIsDeterministic) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "lemni_cli_test_a.svg";
  const auto b = dir / "lemni_cli_test_b.svg";
  ASSERT_EQ(run({"trace", "--format", "svg", "--threads", "1", "--out", a.string()}).code, kExitOk);
  ASSERT_EQ(run({"trace", "--format", "svg", "--threads", "3", "--out", b.string()}).code, kExitOk);
  const std::string text = read_file(a);
  EXPECT_FALSE(text.empty());
  EXPECT_EQ(text, read_file(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, FigureAndExpand) {
  const CliRun fig = run({"figure", "--preset", "maclaurin", "--phi", "10", "--grid", "64"});
  ASSERT_EQ(fig.code, kExitOk) << fig.err;
  EXPECT_EQ(fig.out.rfind("<?xml", 0), 0u);
  const CliRun ex = run({"expand"});
  ASSERT_EQ(ex.code, kExitOk) << ex.err;
  EXPECT_EQ(ex.out, "1 x^4 y^0\n2 x^2 y^2\n1 x^0 y^4\n-2 x^2 y^0\n2 x^0 y^2\n");
}

TEST(Cli, OtherSubcommands) {
  EXPECT_NE(run({"maclaurin", "--phi", "30"}).out.find("chord_length = 1\n"), std::string::npos);
  EXPECT_NE(run({"rightangle", "--alpha", "60"}).out.find("X = 0.866025404,0.5"), std::string::npos);
  EXPECT_NE(run({"invert", "--point", "1.4142135623730951,0"}).out.find("image = 0.707106781,0"),
            std::string::npos);
  const CliRun n = run({"normal", "--point", "1.4142135623730951,0", "--format", "json"});
  ASSERT_EQ(n.code, kExitOk) << n.err;
  EXPECT_LE(nlohmann::json::parse(n.out)["checks"]["gradient_deviation_rad"].get<double>(), 1e-8);
}

TEST(Cli, VerifyPasses) {
  const CliRun r = run({"verify", "--samples", "500", "--grid", "256"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"linkage", "--theta", "abc"}).code, kExitUsage);
  EXPECT_EQ(run({"linkage", "--format", "svg"}).code, kExitUsage);
  EXPECT_EQ(run({"figure", "--preset", "nope"}).code, kExitUsage);
  EXPECT_EQ(run({"normal", "--point", "0,0"}).code, kExitUsage);
  EXPECT_EQ(run({"trace", "--foci", "1,2,3"}).code, kExitUsage);
  EXPECT_EQ(run({"trace", "--grid", "4"}).code, kExitUsage);
  const CliRun r = run({"maclaurin", "--phi", "80"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, EmptyTraceIsNotAnError) {
  const CliRun r = run({"trace", "--window", "5,6,5,6", "--grid", "16"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("note"), std::string::npos);
}

}  // namespace
}  // namespace lemni
