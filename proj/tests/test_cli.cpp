#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ftc/cli.hpp"

namespace ftc {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ftc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  fs::path dir_;
};

constexpr const char* kTwoAgent =
    "protocol = p2\nalpha = 0.5\nx0 = [0, 1]\ndt = 0.0001\n[topology.edge]\nedge 0 1 1\n";

TEST_F(CliTest, BoundsPrintsT2) {
  const auto r = run({"bounds", write("two.scn", kTwoAgent)});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("t2=1.189207\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("t3=1.189207\n"), std::string::npos);
}

TEST_F(CliTest, SimulateWritesCsvAndReport) {
  const auto csv = (dir_ / "traj.csv").string();
  const auto report = (dir_ / "report.json").string();
  const auto r = run({"simulate", write("two.scn", kTwoAgent), "--out", csv, "--report", report});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("status=converged"), std::string::npos);

  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,x1,x2,V1,V2,spread,sum");

  std::ifstream rep(report);
  const auto doc = nlohmann::json::parse(rep);
  ASSERT_TRUE(doc.is_array());
  for (const auto& row : doc)
    for (const char* key : {"quantity", "paper_value", "computed_value", "abs_error", "note"})
      EXPECT_TRUE(row.contains(key));
  EXPECT_EQ(doc[0]["quantity"], "observed_time");
  EXPECT_NEAR(doc[0]["computed_value"].get<double>(), 1.0, 5e-3);
}

TEST_F(CliTest, BadAlphaExitsTwo) {
  const auto r = run({"simulate", write("bad.scn", "protocol = p2\nalpha = 1.5\nx0 = [0, 1]\n"
                                                   "[topology.e]\nedge 0 1 1\n")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("ValidationError"), std::string::npos) << r.err;
}

TEST_F(CliTest, MissingFileAndUnknownCommandExitTwo) {
  EXPECT_EQ(run({"bounds", (dir_ / "absent.scn").string()}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(CliTest, DisconnectedBoundsExitThree) {
  const auto file = write("split.scn",
                          "protocol = p1\nalpha = 0.5\nx0 = [0, 1, 5, 6]\n[topology.s]\n"
                          "edge 0 1 1\nedge 2 3 1\n");
  EXPECT_EQ(run({"bounds", file}).code, 3);
}

TEST_F(CliTest, TimeoutExitsFour) {
  const auto file = write("slow.scn",
                          "protocol = p2\nalpha = 0.5\nx0 = [0, 100]\nt_max = 0.5\n"
                          "[topology.e]\nedge 0 1 1\n");
  EXPECT_EQ(run({"simulate", file}).code, 4);
}

TEST_F(CliTest, SpectralListsEigenvalues) {
  const auto r = run({"spectral", write("p3.scn", "protocol = p2\nalpha = 0.5\nx0 = [0, 1, 2]\n"
                                                  "[topology.p3]\nedge 0 1 1\nedge 1 2 1\n")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("p3: 0.000000 1.000000 3.000000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("connected=yes"), std::string::npos);
}

TEST_F(CliTest, ReproReportsTheReferenceScalars) {
  const auto r = run({"repro", "--out-dir", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  std::map<std::string, nlohmann::json> rows;
  for (const auto& row : doc) rows[row["quantity"]] = row;
  for (const char* q : {"kappa", "V2_0", "lambda2_B", "t2", "t1", "t3"}) {
    ASSERT_TRUE(rows.contains(q)) << q;
    EXPECT_FALSE(rows[q]["abs_error"].is_null());
  }
  EXPECT_EQ(rows["kappa"]["paper_value"].get<double>(), 2.8333);
  EXPECT_EQ(rows["t3"]["paper_value"].get<double>(), 11.3);
  for (const char* f : {"repro_p1.csv", "repro_p2.csv", "repro_switching.csv", "repro_switching.scn"})
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  // The emitted switching scenario parses back and runs through the CLI.
  EXPECT_EQ(run({"bounds", (dir_ / "repro_switching.scn").string()}).code, 0);
}

}  // namespace
}  // namespace ftc
