#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vistrack/cli.hpp"
#include "vistrack/csv_io.hpp"

namespace vistrack {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "vistrack");
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(VISTRACK_TEST_TMPDIR) /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
  }

  fs::path dir_;
};

TEST_F(CliTest, SimulateTrackEvalHappyPath) {
  Result r = run({"simulate", "--scenario", "left36", "--seed", "3", "--out-truth",
                  path("truth.csv"), "--out-obs", path("obs.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(path("obs.csv.meta.json")));
  write("ekf.json", "{}");
  r = run({"track", "--filter", "ekf", "--obs", path("obs.csv"), "--config", path("ekf.json"),
           "--out", path("est.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"eval", "--est", path("est.csv"), "--truth", path("truth.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("tail=10\n"), std::string::npos);
  EXPECT_NE(r.out.find("rmse_x="), std::string::npos);
  EXPECT_NE(r.out.find("tail_mae_z="), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  const Result r = run({"simulate", "--scenario", "up", "--out-truth", path("t.csv"),
                        "--out-obs", path("o.csv")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("left36"), std::string::npos);
  EXPECT_EQ(run({"simulate", "--scenario", "left36"}).code, kExitUsage);
  EXPECT_EQ(run({"calib-check", "--board-center", "1,2", "--out", path("c.csv")}).code,
            kExitUsage);
  EXPECT_EQ(run({"track", "--filter", "ukf", "--obs", "x", "--config", "y", "--out", "z"}).code,
            kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(CliTest, NanObservationIsDataError) {
  write("obs.csv", "frame,u,v\n0,320,240\n1,nan,240\n");
  write("ekf.json", "{}");
  const Result r = run({"track", "--filter", "ekf", "--obs", path("obs.csv"), "--config",
                        path("ekf.json"), "--out", path("est.csv")});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find(":3:"), std::string::npos) << r.err;
}

TEST_F(CliTest, BadConfigAndMissingFilesAreDataErrors) {
  write("obs.csv", "frame,u,v\n0,320,240\n");
  write("bad.json", R"({"unknown_key": 1})");
  EXPECT_EQ(run({"track", "--filter", "ekf", "--obs", path("obs.csv"), "--config",
                 path("bad.json"), "--out", path("est.csv")})
                .code,
            kExitData);
  EXPECT_EQ(run({"eval", "--est", path("missing.csv"), "--truth", path("obs.csv")}).code,
            kExitData);
}

TEST_F(CliTest, NumericalFailure) {
  // A point on the principal ray that every particle is far from still has weight; put the
  // whole cloud behind the camera instead.
  write("obs.csv", "frame,u,v\n0,320,240\n");
  write("pf.json", R"({"initial_point": [0, 0, -50], "particles": 10})");
  const Result r = run({"track", "--filter", "pf", "--obs", path("obs.csv"), "--config",
                        path("pf.json"), "--out", path("est.csv")});
  EXPECT_EQ(r.code, kExitNumerical) << r.err;
}

TEST_F(CliTest, CalibCheckEmitsPrincipalPoint) {
  const Result r = run({"calib-check", "--board-center", "0,0,150", "--square-size", "4",
                        "--out", path("corners.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path("corners.csv"));
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  ASSERT_EQ(lines.size(), 10u);
  EXPECT_EQ(lines[0], "corner,x,y,z,u,v");
  EXPECT_EQ(lines[5], "5,0,0,150,320,240");
}

TEST_F(CliTest, CalibCheckAcceptsNegativeCenterWithEquals) {
  const Result r = run({"calib-check", "--board-center=-10,0,150", "--camera", "500,320,240",
                        "--out", path("corners.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(CliTest, TrackFromCornerFile) {
  std::string rows;
  for (int f = 0; f < 5; ++f) {
    rows += std::to_string(f);
    for (int c = 1; c <= 9; ++c) {
      rows += c == 5 ? ",300,240" : ",0,0";
    }
    rows += "\n";
  }
  write("corners.csv", rows);
  write("ekf.json", "{}");
  Result r = run({"track", "--filter", "ekf", "--corners", path("corners.csv"), "--config",
                  path("ekf.json"), "--out", path("est.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_estimates(fs::path(path("est.csv"))).size(), 5u);
  // Corner rows are not a frame,u,v file.
  r = run({"track", "--filter", "ekf", "--obs", path("corners.csv"), "--config",
           path("ekf.json"), "--out", path("est.csv")});
  EXPECT_EQ(r.code, kExitData);
  // Neither or both input options.
  EXPECT_EQ(run({"track", "--filter", "ekf", "--config", path("ekf.json"), "--out",
                 path("est.csv")})
                .code,
            kExitUsage);
  EXPECT_EQ(run({"track", "--filter", "ekf", "--obs", "a", "--corners", "b", "--config",
                 path("ekf.json"), "--out", path("est.csv")})
                .code,
            kExitUsage);
}

}  // namespace
}  // namespace vistrack
