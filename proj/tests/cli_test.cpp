// Copyright 2026 The zxbp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + "'" ZXBP_CLI_PATH "' " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("zxbp_cli_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int count(const std::string& text, const std::string& needle) {
  int c = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++c;
  return c;
}

}  // namespace

TEST(Analyze, TwoQubitExample) {
  CliRun r = run("analyze --circuit " ZXBP_TEST_DATA "/example2q.qc --H XX --param theta1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("# zxbp analyze csv v1\n", 0), 0u);
  EXPECT_NE(r.out.find(",0.046875,3/64"), std::string::npos) << r.out;
}

TEST(Analyze, MpsFamilyClosedForm) {
  CliRun r = run("analyze --ansatz mps --n 6 --H lastX --param theta1 --format json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["method"], "family");
  EXPECT_EQ(j["exact"], "1/128");
  EXPECT_DOUBLE_EQ(j["variance"].get<double>(), 1.0 / 128);
  EXPECT_EQ(j["config"]["ansatz"], "mps");
}

TEST(Analyze, MethodsAgree) {
  auto value = [](const std::string& method) {
    CliRun r = run("analyze --ansatz ttn --n 4 --H Z0 --param t2q0 --format json --method " + method);
    EXPECT_EQ(r.code, 0) << method;
    return nlohmann::json::parse(r.out)["variance"].get<double>();
  };
  double fam = value("family");
  EXPECT_NEAR(fam, value("network"), 1e-12);
  EXPECT_NEAR(fam, value("brute-force"), 1e-12);
}

TEST(Analyze, Errors) {
  EXPECT_EQ(run("analyze --circuit " ZXBP_TEST_DATA "/malformed.qc --H XX").code, 2);
  EXPECT_EQ(run("analyze --circuit /nonexistent.qc --H XX").code, 2);
  EXPECT_EQ(run("analyze --ansatz he --n 2 --H XX --param nope").code, 2);
  EXPECT_EQ(run("analyze --ansatz ring --n 2 --H XX").code, 2);
  EXPECT_EQ(run("analyze --ansatz he --n 4 --L 3 --H Z0 --method brute-force").code, 3);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Verify, LemmaThree) {
  CliRun r = run("verify --lemma 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count(r.out, ",PASS\n"), 9);
  EXPECT_EQ(count(r.out, "\nM["), 9);
}

TEST(Verify, MonteCarlo) {
  CliRun r = run("verify --mc --seed 7 --samples 200000 --format json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["checks"].size(), 2u);
  EXPECT_EQ(j["config"]["seed"], 7);
}

TEST(Verify, DefaultSuitePasses) {
  CliRun r = run("verify");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count(r.out, ",FAIL\n"), 0);
  EXPECT_GT(count(r.out, ",PASS\n"), 144);
}

TEST(Verify, FailureExitCode) {
  CliRun r = run("verify --mc --seed 1 --samples 3");
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.out.find(",FAIL\n"), std::string::npos);
  EXPECT_EQ(run("verify --lemma 9").code, 2);
}

TEST(Scan, Verdicts) {
  CliRun he = run("scan --ansatz he --n 2..8 --L n");
  EXPECT_EQ(he.code, 0);
  EXPECT_EQ(count(he.out, ",exponential\n"), 7);
  CliRun q = run("scan --ansatz qcnn --n 2..16");
  EXPECT_EQ(count(q.out, ",polynomial\n"), 4);
  CliRun t = run("scan --ansatz ttn --n 2..16");
  EXPECT_NE(t.out.find("ttn,16,1,0,0.094214618671685457,0.03125,polynomial\n"), std::string::npos) << t.out;
  CliRun m = run("scan --ansatz mps --n 2..10 --format json");
  EXPECT_EQ(nlohmann::json::parse(m.out)["classification"], "exponential");
}

TEST(Scan, Errors) {
  EXPECT_EQ(run("scan --ansatz he --n 8..2").code, 2);
  EXPECT_EQ(run("scan --ansatz he --n x").code, 2);
  EXPECT_EQ(run("scan --ansatz he --n 13").code, 3);
}

TEST(Eigen, UnitEigenvaluesFirst) {
  CliRun r = run("eigen --n 4");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> lt;
  while (std::getline(in, line)) {
    if (line.rfind("LT,", 0) == 0) lt.push_back(line);
  }
  ASSERT_EQ(lt.size(), 81u);
  for (int k = 0; k < 2; ++k) EXPECT_NEAR(std::stod(lt[k].substr(lt[k].rfind(',') + 1)), 1.0, 1e-9);
  EXPECT_LT(std::stod(lt[2].substr(lt[2].rfind(',') + 1)), 1.0 - 1e-6);
  EXPECT_NE(r.out.find("# LT n=4 unit_count=2"), std::string::npos);
  EXPECT_EQ(run("eigen --n 0").code, 2);
  EXPECT_EQ(run("eigen --n 7").code, 3);
}

TEST(DumpTensors, ExactRationals) {
  CliRun r = run("dump-tensors");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\nM,22,1/4\n"), std::string::npos);
  EXPECT_NE(r.out.find("\nM,23,-1/4\n"), std::string::npos);
  EXPECT_NE(r.out.find("\nET,111,1/8\n"), std::string::npos);
  EXPECT_EQ(count(r.out, "\nM,"), 9);
  EXPECT_EQ(count(r.out, "\nET,"), 27);
  EXPECT_EQ(count(r.out, "\nT_TTN,"), 27);
  EXPECT_EQ(count(r.out, "\nEM,"), 81);
  auto j = nlohmann::json::parse(run("dump-tensors --format json").out);
  EXPECT_TRUE(j.contains("EM"));
}

TEST(Outputs, ByteIdenticalFiles) {
  fs::path d = scratch_dir("identical");
  for (const char* name : {"a", "b"}) {
    std::string args = "scan --ansatz qcnn --n 2..8 --format json --out " + (d / name).string();
    ASSERT_EQ(run(args).code, 0);
  }
  std::string a = slurp(d / "a"), b = slurp(d / "b");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
  for (const char* name : {"c", "e"}) {
    ASSERT_EQ(run("verify --mc --seed 3 --samples 5000 --out " + (d / name).string()).code, 0);
  }
  EXPECT_EQ(slurp(d / "c"), slurp(d / "e"));
  fs::remove_all(d);
}

TEST(Outputs, EnvironmentOutputDirectory) {
  fs::path d = scratch_dir("env");
  CliRun r = run("eigen --n 3", "ZXBP_OUTPUT_DIR='" + d.string() + "'");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(slurp(d / "eigen.csv").find("# zxbp eigen csv v1"), std::string::npos);
  fs::remove_all(d);
}
