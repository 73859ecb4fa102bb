#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string out;
};

Invocation run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + RADLYAP_CLI_PATH + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("radlyap_cli_" + std::to_string(::getpid()) + "_" +
                                       ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, EigenWritesJsonEnvelope) {
  const auto path = dir / "e.json";
  const Invocation r = run("eigen --dim 3 --k 1 --out " + path.string());
  ASSERT_EQ(r.code, 0) << r.out;
  const auto doc = nlohmann::json::parse(slurp(path));
  EXPECT_EQ(doc["command"], "eigen");
  EXPECT_EQ(doc["config"]["dim"], 3);
  EXPECT_NEAR(doc["result"]["eigenvalue"].get<double>(), 20.190728556426629, 1e-7);
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
  const auto a = dir / "a.json", b = dir / "b.json";
  ASSERT_EQ(run("gamma --dim 2 --k 0 --p 2 --knots 2 --budget 40 --restarts 2 --out " + a.string()).code, 0);
  ASSERT_EQ(run("gamma --dim 2 --k 0 --p 2 --knots 2 --budget 40 --restarts 2 --out " + b.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST_F(Cli, OutputDirectoryFromEnvironment) {
  const Invocation r = run("family --dim 3 --k 1 --p 1 --eps-sweep 0.1,0.05", "RADLYAP_OUTPUT_DIR=" + dir.string());
  ASSERT_EQ(r.code, 0) << r.out;
  const std::string csv = slurp(dir / "family.csv");
  EXPECT_EQ(csv.rfind("# radlyap 0.1.0 config=", 0), 0u);
  EXPECT_NE(csv.find("\"p\":1"), std::string::npos);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("epsilon,", 0), 0u) << line;
}

TEST_F(Cli, VerifyAcceptsAGammaWitness) {
  const auto g = dir / "g.json";
  ASSERT_EQ(run("gamma --dim 2 --k 1 --p inf --out " + g.string()).code, 0);
  const auto doc = nlohmann::json::parse(slurp(g));
  const auto pot = dir / "pot.json";
  std::ofstream(pot) << doc["result"]["witness"].dump();
  const auto v = dir / "v.json";
  const Invocation r = run("verify --potential " + pot.string() + " --out " + v.string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(nlohmann::json::parse(slurp(v))["result"]["membership"]["member"].get<bool>());
}

TEST_F(Cli, BadArgumentsExitWithTwo) {
  for (const char* args : {"eigen --bogus", "eigen --dim 1", "gamma --p 0.5", "eigen --bc robin", "family --dim 2 --k 1"}) {
    const Invocation r = run(std::string(args) + " --out " + (dir / "x").string());
    EXPECT_EQ(r.code, 2) << args << "\n" << r.out;
    EXPECT_NE(r.out.find("\"error\""), std::string::npos) << args;
  }
}

TEST_F(Cli, MissingPotentialFileIsAnError) {
  const Invocation r = run("verify --potential " + (dir / "missing.json").string());
  EXPECT_NE(r.code, 0);
}
