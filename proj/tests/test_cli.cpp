#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  double seconds = 0.0;
};

Result cli(const std::string& args) {
  const std::string cmd = std::string(PDCE_CLI) + " " + args + " 2>/dev/null";
  const auto start = std::chrono::steady_clock::now();
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pdce_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const nlohmann::json* find_check(const nlohmann::json& report, const std::string& name) {
  for (const auto& c : report["checks"])
    if (c["name"] == name) return &c;
  return nullptr;
}

}  // namespace

TEST(Cli, VerifyFastReport) {
  const Result r = cli("verify --level fast");
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report["level"], "fast");
  EXPECT_LT(r.seconds, 30.0);
  EXPECT_EQ(r.code, report["passed"].get<bool>() ? 0 : 3);
  ASSERT_NE(find_check(report, "dynamics.r_growth"), nullptr);
  EXPECT_TRUE((*find_check(report, "dynamics.r_growth"))["passed"].get<bool>());
  for (const auto& c : report["checks"]) EXPECT_EQ(c["name"].get<std::string>().rfind("fock.fig1_oracle", 0), std::string::npos);
}

TEST(Cli, InjectedFaultBreaksGrowthCheck) {
  const Result r = cli("verify --level fast --inject-fault squeeze-growth");
  EXPECT_EQ(r.code, 3);
  const auto report = nlohmann::json::parse(r.out);
  const auto* c = find_check(report, "dynamics.r_growth");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE((*c)["passed"].get<bool>());
}

TEST(Cli, RunPresetWritesFiles) {
  const fs::path dir = scratch("fig1");
  const Result r = cli("run --preset fig1 --out " + dir.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_LT(r.seconds, 10.0);
  EXPECT_TRUE(fs::exists(dir / "fig1.csv"));
  EXPECT_TRUE(fs::exists(dir / "fig1.gp"));
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const fs::path dir = scratch("env");
  const fs::path cfg = dir / "short.cfg";
  std::ofstream(cfg) << "tau_max = 2\n";
  ::setenv("PSEUDO_DCE_OUT", dir.c_str(), 1);
  const Result e = cli("run --config " + cfg.string());
  ::unsetenv("PSEUDO_DCE_OUT");
  EXPECT_EQ(e.code, 0);
  EXPECT_TRUE(fs::exists(dir / "run.csv"));
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("codes");
  std::ofstream(dir / "bad.cfg") << "eps_mod = 1.5\n";
  std::ofstream(dir / "syntax.cfg") << "chi 3\n";
  std::ofstream(dir / "sim.cfg") << "dyson_source = integrated\n";
  EXPECT_EQ(cli("run --config " + (dir / "bad.cfg").string() + " --out " + dir.string()).code, 1);
  EXPECT_EQ(cli("run --config " + (dir / "syntax.cfg").string() + " --out " + dir.string()).code, 1);
  EXPECT_EQ(cli("run --config " + (dir / "sim.cfg").string() + " --out " + dir.string()).code, 2);
  EXPECT_EQ(cli("frobnicate").code, 1);
}

TEST(Cli, SweepSummary) {
  const fs::path dir = scratch("sweep");
  std::ofstream(dir / "base.cfg") << "tau_max = 10\n";
  const Result r = cli("sweep --config " + (dir / "base.cfg").string() +
                       " --axis beta0_tilde --values 1e-3,1e-4 --workers 2 --out " + dir.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(dir / "sweep_beta0_tilde_summary.csv"));
  EXPECT_EQ(cli("sweep --axis outputs --values 1 --out " + dir.string()).code, 1);
}
