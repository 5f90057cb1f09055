#include "rootset/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "rootset/io.hpp"

namespace rootset::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("rootset_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ThresholdForRadius) {
  const auto r = invoke({"threshold", "--r", "0.8660254"});
  EXPECT_EQ(r.status, kSuccess);
  EXPECT_NEAR(std::stod(r.out), 2.0943951, 1e-6);
}

TEST_F(CliTest, ThresholdForSet) {
  const auto r = invoke({"threshold", "--set", "uniform:3"});
  EXPECT_EQ(r.status, kSuccess);
  EXPECT_NE(r.out.find("max_gap: 2.0943951023931"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("min_covered_radius: 0.866025403784438"), std::string::npos) << r.out;
  EXPECT_NE(invoke({"threshold", "--set", "littlewood"}).out.find("min_covered_radius: none"), std::string::npos);
}

TEST_F(CliTest, EnumerateLittlewoodDegreeTwo) {
  const auto r = invoke({"enumerate", "--set", "littlewood", "--max-degree", "2", "--out", path("cloud.csv")});
  ASSERT_EQ(r.status, kSuccess) << r.err;
  std::ifstream in(path("cloud.csv"));
  const auto rows = io::read_cloud_csv(in);
  // Four linear polynomials with one root each and eight quadratics with two.
  EXPECT_EQ(rows.size(), 20u);
  int golden = 0;
  for (const auto& row : rows) golden += std::abs(row.z - std::complex<double>(0.6180339887498949, 0.0)) < 1e-12;
  EXPECT_GE(golden, 1);
  EXPECT_NE(slurp(path("cloud.csv")).find("0.6180339887"), std::string::npos);
}

TEST_F(CliTest, ExpandWritesPassingCertificate) {
  const auto r = invoke({"expand", "--set", "uniform:12", "--z", "0.7,0", "--steps", "64", "--out", path("c.txt")});
  ASSERT_EQ(r.status, kSuccess) << r.err;
  std::ifstream in(path("c.txt"));
  const auto record = io::Record::read(in);
  EXPECT_TRUE(record.get_bool("passed"));
  EXPECT_EQ(record.get_doubles("digit_angles").size(), 65u);
}

TEST_F(CliTest, ExpandFailureWritesDetailsAndExitsFour) {
  const auto r = invoke({"expand", "--set", "uniform:3", "--z", "0.55,0", "--steps", "32", "--out", path("f.txt")});
  EXPECT_EQ(r.status, kCertifiedFailure);
  std::ifstream in(path("f.txt"));
  const auto record = io::Record::read(in);
  EXPECT_EQ(record.get("record"), "expansion_failure");
  EXPECT_FALSE(record.get_bool("passed"));
}

TEST_F(CliTest, InvalidArgumentsExitTwo) {
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {},
           {"frobnicate"},
           {"threshold"},
           {"threshold", "--r", "0.4"},
           {"threshold", "--r", "0.8", "--set", "littlewood"},
           {"expand", "--set", "bogus", "--z", "0.7,0"},
           {"expand", "--set", "uniform:12", "--z", "0.7"},
           {"expand", "--set", "uniform:12", "--z", "0.2,0"},
           {"enumerate", "--set", "littlewood"},
           {"enumerate", "--set", "littlewood", "--max-degree", "2", "--symmetry", "mirror"},
           {"coverage", "--set", "littlewood", "--max-degree", "2", "--rin", "1", "--rout", "0.5", "--eps", "0.1"},
           {"exclude", "--set", "littlewood", "--modulus", "1.5"},
           {"exclude", "--set", "littlewood", "--modulus", "0.5", "--samples", "3"},
           {"render", "--in", "/nonexistent/cloud.csv", "--out", "x.pgm"},
       }) {
    const auto r = invoke(args);
    EXPECT_EQ(r.status, kInvalidArguments) << (args.empty() ? "<none>" : args[0]) << " " << r.err;
  }
}

TEST_F(CliTest, ResourceCapRefusalExitsThree) {
  const auto r = invoke({"enumerate", "--set", "uniform:4", "--max-degree", "6", "--cap", "1000"});
  EXPECT_EQ(r.status, kResourceCapRefused);
  EXPECT_NE(r.err.find("--force"), std::string::npos);
  const auto forced =
      invoke({"enumerate", "--set", "uniform:4", "--max-degree", "3", "--cap", "10", "--force", "--out", path("x.csv")});
  EXPECT_EQ(forced.status, kSuccess);
}

TEST_F(CliTest, RenderConsumesEnumerateOutput) {
  ASSERT_EQ(invoke({"enumerate", "--set", "uniform:3", "--max-degree", "4", "--out", path("cloud.csv")}).status,
            kSuccess);
  const auto r = invoke({"render", "--in", path("cloud.csv"), "--out", path("cloud.pgm"), "--width", "64", "--height",
                         "48"});
  ASSERT_EQ(r.status, kSuccess) << r.err;
  const std::string pgm = slurp(path("cloud.pgm"));
  const std::string header = "P5\n64 48\n255\n";
  ASSERT_EQ(pgm.size(), header.size() + 64 * 48);
  EXPECT_EQ(pgm.substr(0, header.size()), header);
  std::ifstream in(path("cloud.csv"));
  EXPECT_EQ(pgm, io::render_pgm(io::read_cloud_csv(in), 64, 48));
}

TEST_F(CliTest, CoverageAndExcludeWriteRecords) {
  ASSERT_EQ(invoke({"coverage", "--set", "littlewood", "--max-degree", "6", "--rin", "0.85", "--rout", "1.15", "--eps",
                    "0.05", "--out", path("cov.txt"), "--raster", path("cov.pgm")})
                .status,
            kSuccess);
  std::ifstream cov(path("cov.txt"));
  const auto report = io::Record::read(cov);
  EXPECT_LE(report.get_int("hit_cells"), report.get_int("total_cells"));
  EXPECT_EQ(slurp(path("cov.pgm")).substr(0, 2), "P5");

  ASSERT_EQ(invoke({"exclude", "--set", "littlewood", "--modulus", "0.5", "--samples", "360", "--out", path("ex.txt")})
                .status,
            kSuccess);
  std::ifstream ex(path("ex.txt"));
  const auto hole = io::Record::read(ex);
  EXPECT_TRUE(hole.get_bool("found"));
  EXPECT_NEAR(hole.get_double("margin"), 0.6180339887498949, 1e-10);
}

TEST_F(CliTest, OutputsAreByteIdenticalAcrossThreadCounts) {
  const std::vector<std::vector<std::string>> jobs{
      {"enumerate", "--set", "uniform:3", "--max-degree", "6", "--out"},
      {"coverage", "--set", "littlewood", "--max-degree", "8", "--rin", "0.85", "--rout", "1.15", "--eps", "0.05",
       "--out"},
      {"expand", "--set", "uniform:7", "--z", "0.6,0.5", "--target", "0.3,-1", "--steps", "300", "--out"},
      {"exclude", "--set", "uniform:3", "--modulus", "0.6", "--out"},
  };
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    std::string reference;
    for (const char* threads : {"1", "3", "8"}) {
      auto args = jobs[j];
      const std::string file = path("job" + std::to_string(j) + "_" + threads);
      args.push_back(file);
      if (args[0] == "enumerate" || args[0] == "coverage") {
        args.push_back("--threads");
        args.push_back(threads);
      }
      ASSERT_EQ(invoke(args).status, kSuccess) << args[0];
      const std::string bytes = slurp(file);
      if (reference.empty()) reference = bytes;
      EXPECT_EQ(bytes, reference) << args[0] << " threads=" << threads;
    }
  }
}

TEST_F(CliTest, StdoutWhenNoOutputFile) {
  const auto r = invoke({"enumerate", "--set", "littlewood", "--max-degree", "1"});
  EXPECT_EQ(r.status, kSuccess);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), io::kCloudHeader);
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(invoke({"--help"}).status, kSuccess); }

}  // namespace
}  // namespace rootset::cli
