#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string output;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(STOCHROUTE_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("stochroute-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string bays29() const { return std::string(STOCHROUTE_DATA_DIR) + "/bays29.tsp"; }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, SuiteGeneratesThirteenNamedInstances) {
  const CliRun r = run("generate " + bays29() + " --suite --out " + dir.string());
  ASSERT_EQ(r.code, 0) << r.output;
  for (const char* name : {"bays29-1-0", "bays29-2-1", "bays29-2-3", "bays29-2-5", "bays29-3-1", "bays29-3-3",
                           "bays29-3-5", "bays29-4-1", "bays29-4-3", "bays29-4-5", "bays29-5-1", "bays29-5-3",
                           "bays29-5-5"})
    EXPECT_TRUE(fs::exists(dir / (std::string(name) + ".json"))) << name;
  EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}), 13);
}

TEST_F(Cli, TooManyRequiredTargetsIsAnError) {
  const CliRun r = run("generate " + bays29() + " -n 2 -f 20 --out " + dir.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("exceeds"), std::string::npos) << r.output;
}

TEST_F(Cli, MalformedRangeIsAnError) {
  EXPECT_EQ(run("generate " + bays29() + " -n 1 --service-range 5 --out " + dir.string()).code, 1);
  EXPECT_EQ(run("generate " + bays29() + " -n 1 --service-range 9:5 --out " + dir.string()).code, 1);
  EXPECT_EQ(run("generate " + bays29() + " -n 1 --tau-bar-offset=-4:-1 --out " + dir.string()).code, 0);
}

TEST_F(Cli, SolvePlotAndVss) {
  ASSERT_EQ(run("generate " + bays29() + " -n 1 --scenarios 10 --out " + dir.string()).code, 0);
  const std::string inst = (dir / "bays29-1-0.json").string();

  const CliRun s = run("solve " + inst + " --out " + dir.string());
  ASSERT_EQ(s.code, 0) << s.output;
  EXPECT_NE(s.output.find("status=optimal"), std::string::npos);
  ASSERT_TRUE(fs::exists(dir / "bays29-1-0.stochastic.json"));

  const CliRun p = run("plot " + inst + " " + (dir / "bays29-1-0.stochastic.json").string() + " --out " +
                    (dir / "t.svg").string());
  EXPECT_EQ(p.code, 0) << p.output;
  EXPECT_TRUE(fs::exists(dir / "t.svg"));

  const CliRun v = run("vss " + inst + " --out " + dir.string());
  ASSERT_EQ(v.code, 0) << v.output;
  std::ifstream in(dir / "bays29-1-0.vss.json");
  const auto rec = nlohmann::json::parse(in);
  EXPECT_NEAR(rec["vss"].get<double>(), 0.0, 1e-6);
  for (const char* f : {"vss_table.md", "vss_table.csv", "time_table.md", "time_table.csv", "cuts.csv",
                        "extra_time.csv", "bays29-1-0.evp.json"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
}

TEST_F(Cli, TimeLimitExitsWithTwo) {
  ASSERT_EQ(run("generate " + bays29() + " -n 3 -f 1 --scenarios 10 --out " + dir.string()).code, 0);
  const CliRun s = run("solve " + (dir / "bays29-3-1.json").string() + " --time-limit 0 --out " + dir.string());
  EXPECT_EQ(s.code, 2) << s.output;
  EXPECT_NE(s.output.find("status=time_limit"), std::string::npos) << s.output;
}

TEST_F(Cli, MissingFileIsAnError) {
  EXPECT_EQ(run("solve " + (dir / "nope.json").string()).code, 1);
  EXPECT_EQ(run("").code, 1);
}
