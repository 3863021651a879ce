#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#ifndef ORBITGEOM_CLI
#error "ORBITGEOM_CLI must name the command-line binary"
#endif

namespace {

struct CliResult {
  int status = -1;
  std::string out;
};

CliResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(ORBITGEOM_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("orbitgeom_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream(path) << content;
    return path.string();
  }

  std::string save(const std::string& name, const std::string& args) {
    const CliResult r = run(args);
    EXPECT_EQ(r.status, 0) << args;
    return write(name, r.out);
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(Cli, ClassifyBasepoint) {
  const std::string f = save("m111.json", "basepoint --p 2 --q 6 --label 1,1,1 --format json");
  const CliResult r = run("classify --input " + f);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "K=(1,1) G0=(1,1,1) Matsuki=M(1,1,1)");
}

TEST_F(Cli, ClassifyCoordinatePlaneAndMixedPoint) {
  const std::string plane = write("plane.json", R"({"p":2,"q":6,"k":3,"basis":[
    [[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]],[[0,0],[0,0],[0,0]],
    [[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]]})");
  EXPECT_EQ(run("classify --input " + plane).out.substr(0, 35), "K=(2,1) G0=(2,1,0) Matsuki=M(2,1,0)");

  const std::string mixed = write("mixed.json", R"({"p":2,"q":6,"k":3,"basis":[
    [[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]],[[0,0],[2,0],[0,0]],
    [[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]]})");
  const CliResult r = run("classify --input " + mixed);
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("Matsuki=none"), std::string::npos);
  const auto j = nlohmann::json::parse(run("classify --format json --input " + mixed).out);
  EXPECT_TRUE(j["matsuki"].is_null());
}

TEST_F(Cli, InputErrorsExitOne) {
  EXPECT_EQ(run("classify --input " + write("bad.json", "{not json")).status, 1);
  EXPECT_EQ(run("classify --input " + (dir_ / "missing.json").string()).status, 1);
  const std::string deficient = write("deficient.json", R"({"p":1,"q":1,"k":2,"basis":[
    [[1,0],[2,0]],[[0,0],[0,0]]]})");
  EXPECT_EQ(run("classify --input " + deficient).status, 1);
  EXPECT_EQ(run("basepoint --p 2 --q 6 --label 3,0,0").status, 1);
  EXPECT_EQ(run("basepoint --p 2 --q 6 --label 1,x,1").status, 1);
  EXPECT_EQ(run("catalog --p 0 --q 6 --k 3").status, 1);
  EXPECT_EQ(run("catalog --p 2 --q 6 --k 3 --format yaml").status, 1);
  EXPECT_EQ(run("no-such-command").status, 1);
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("catalog --p 2 --q 6 --k 3", "ORBITGEOM_TOL=abc").status, 1);
  EXPECT_EQ(run("--help").status, 0);
  EXPECT_EQ(run("verify --help").status, 0);
}

TEST_F(Cli, CatalogRows) {
  const CliResult r = run("catalog --p 2 --q 6 --k 3 --format json");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 18u);
  int counts[3] = {0, 0, 0};
  for (const auto& row : j["rows"]) {
    counts[row["kind"] == "K" ? 0 : row["kind"] == "G0" ? 1 : 2]++;
  }
  EXPECT_EQ(counts[0], 6);
  EXPECT_EQ(counts[1], 6);
  EXPECT_EQ(counts[2], 6);
}

TEST_F(Cli, WitnessBetweenSampledPoints) {
  const std::string a = save("a.json", "sample --p 2 --q 6 --label 1,1,1 --seed 1 --format json");
  const std::string b = save("b.json", "sample --p 2 --q 6 --label 1,1,1 --seed 2 --format json");
  const CliResult r = run("witness --group K0 --format json --input " + a + " --input2 " + b);
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["group"], "K0");
  EXPECT_EQ(j["matrix"].size(), 8u);
  EXPECT_TRUE(j["self_check"]["pass"].get<bool>());
  EXPECT_LT(j["self_check"]["distance"].get<double>(), 1e-7);

  const std::string c = save("c.json", "basepoint --p 2 --q 6 --label 0,2,1 --format json");
  EXPECT_EQ(run("witness --group K0 --input " + a + " --input2 " + c).status, 1);
}

TEST_F(Cli, ProjectFiberCrdim) {
  const std::string a = save("a.json", "basepoint --p 2 --q 6 --label 1,1,1 --format json");
  const auto base = nlohmann::json::parse(run("project --format json --input " + a).out);
  EXPECT_EQ(base["plus"]["k"], 1);
  EXPECT_EQ(base["minus"]["k"], 1);

  const auto fiber = nlohmann::json::parse(
      run("fiber --p 2 --q 6 --label 1,1,1 --kind isotropic --seed 4 --format json").out);
  EXPECT_LT(fiber["gram_norm"].get<double>(), 1e-10);
  EXPECT_EQ(fiber["classification"]["matsuki"], "M(1,1,1)");
  EXPECT_EQ(run("fiber --p 2 --q 6 --label 1,1,1 --kind sideways").status, 1);

  const auto t = nlohmann::json::parse(run("crdim --format json --input " + a).out);
  EXPECT_EQ(t["dimR"], 21);
  EXPECT_EQ(t["crdim"], 10);
  EXPECT_EQ(t["crcodim"], 1);
  EXPECT_LT(t["residuals"]["holomorphic"].get<double>(), 1e-6);
}

TEST_F(Cli, VerifyPassesAndReportsJson) {
  const CliResult r = run("verify --p 2 --q 2 --k 3 --samples 5 --format json");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["overall"], "pass");
  EXPECT_EQ(j["reports"].size(), 5u);
}

TEST_F(Cli, VerifyTwoSixThreeExitsZero) {
  const CliResult r = run("verify --p 2 --q 6 --k 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("overall: pass"), std::string::npos);
}

TEST_F(Cli, ExampleReport) {
  const CliResult r = run("example-m111");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("complex dimensions (1, 5), product 6"), std::string::npos);
  EXPECT_NE(r.out.find("complex dimension 5"), std::string::npos);
  EXPECT_NE(r.out.find("dimC 11 by formula, dimR 22 measured"), std::string::npos);
  EXPECT_NE(r.out.find("claim - not machine-checked"), std::string::npos);
}

TEST_F(Cli, ToleranceFromEnvironment) {
  const std::string a = save("a.json", "basepoint --p 2 --q 6 --label 1,1,1 --format json");
  EXPECT_EQ(run("classify --input " + a, "ORBITGEOM_TOL=1e-8").status, 0);
  EXPECT_EQ(run("classify --input " + a, "ORBITGEOM_TOL=-1").status, 1);
}

TEST_F(Cli, Determinism) {
  const std::string a = save("a.json", "sample --p 2 --q 6 --label 1,1,1 --seed 5 --format json");
  for (const std::string args :
       {"classify --input " + a, std::string("catalog --p 2 --q 6 --k 3"),
        std::string("catalog --p 2 --q 6 --k 3 --format json"),
        std::string("verify --p 2 --q 2 --k 3 --samples 10"), std::string("example-m111"),
        std::string("example-m111 --format json")}) {
    const CliResult first = run(args);
    const CliResult second = run(args);
    EXPECT_EQ(first.status, 0) << args;
    EXPECT_EQ(first.out, second.out) << args;
  }
}
