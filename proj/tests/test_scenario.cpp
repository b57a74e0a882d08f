#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "pdce/error.hpp"
#include "pdce/scenario.hpp"

using namespace pdce;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pdce_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<std::string> lines_of(const fs::path& file) {
  std::ifstream in(file);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(ParseConfig, EmptyGivesFig1Defaults) {
  const ScenarioConfig c = parse_config("");
  EXPECT_DOUBLE_EQ(c.drive.omega0, 1.0);
  EXPECT_DOUBLE_EQ(c.drive.eps_mod, 1e-2);
  EXPECT_DOUBLE_EQ(c.drive.alpha0_tilde, 1e-2);
  EXPECT_DOUBLE_EQ(c.drive.beta0_tilde, 1e-3);
  EXPECT_DOUBLE_EQ(c.chi, 1.0002);
  EXPECT_DOUBLE_EQ(c.varphi0, kPi / 2);
  EXPECT_DOUBLE_EQ(c.r0, 0.0);
  EXPECT_DOUBLE_EQ(c.tau_max, 50.0);
  EXPECT_EQ(c.dyson_source, DysonRoute::Approximate);
}

TEST(ParseConfig, SectionsCommentsAndOverrides) {
  const ScenarioConfig c = parse_config(
      "# comment\n"
      "[drive]\n"
      "beta0_tilde = 1e-4   # dotted line\n"
      "zeta_mode = exact\n"
      "[run]\n"
      "tau_max = 20\n"
      "oracle = true\n"
      "[output]\n"
      "outputs = tau, r_numeric, N_numeric\n");
  EXPECT_DOUBLE_EQ(c.drive.beta0_tilde, 1e-4);
  EXPECT_EQ(c.drive.zeta_mode, ZetaMode::Exact);
  EXPECT_DOUBLE_EQ(c.tau_max, 20.0);
  EXPECT_TRUE(c.oracle);
  ASSERT_EQ(c.outputs.size(), 3u);
  EXPECT_EQ(c.outputs[2], Column::N_numeric);
}

TEST(ParseConfig, ErrorsCarryLineNumbers) {
  try {
    parse_config("chi = 1.0002\n\nbogus = 3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  try {
    parse_config("chi = 2\nchi = 3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse_config("eps_mod = abc\n"), ParseError);
  EXPECT_THROW(parse_config("[nowhere]\n"), ParseError);
  EXPECT_THROW(parse_config("tau_max\n"), ParseError);
  EXPECT_THROW(parse_config("outputs = tau, nonsense\n"), ParseError);
}

TEST(ParseConfig, ValidationNamesInvariant) {
  try {
    parse_config("eps_mod = 1.5\n");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(e.invariant().find("eps_mod"), std::string::npos);
  }
  EXPECT_THROW(parse_config("points_per_period = 100\n"), ValidationError);
  EXPECT_THROW(parse_config("chi = 1\n"), ValidationError);
}

TEST(FormatNumber, RoundTripsAndSpecials) {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 6.02e23}) EXPECT_EQ(std::stod(format_number(v)), v);
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
}

TEST(Run, RowsMatchHeader) {
  ScenarioConfig c = parse_config("tau_max = 5\noracle = true\n");
  const RunRecord r = run(c);
  ASSERT_TRUE(r.ok()) << r.error.value_or("");
  ASSERT_FALSE(r.rows.empty());
  for (const auto& row : r.rows) EXPECT_EQ(row.size(), r.columns.size());
  EXPECT_NEAR(r.summary.tau_final, 5.0, 1e-12);
  EXPECT_NEAR(r.summary.amplification, 44.999, 1e-3);
  EXPECT_LT(r.residuals.max_oracle_relative_error, 1e-4);

  std::ostringstream out;
  write_csv(out, r);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("tau,r_numeric,r_analytic,", 0), 0u);
  EXPECT_NE(header.find("N_oracle"), std::string::npos);
}

TEST(Run, OffResonanceLeavesAnalyticColumnsEmpty) {
  const RunRecord r = run(parse_config("kappa = 2.3\ntau_max = 3\noutputs = tau, r_analytic\n"));
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(std::isnan(r.rows.back()[1]));
}

TEST(Run, SimulationFailureIsRecorded) {
  const RunRecord r = run(parse_config("dyson_source = integrated\n"));
  EXPECT_EQ(r.status, 2);
  ASSERT_TRUE(r.error.has_value());
  EXPECT_NE(r.error->find("ChiSingular"), std::string::npos);
}

TEST(Preset, Fig3WritesThreeSeriesAndScript) {
  const fs::path dir = scratch("fig3");
  ScenarioConfig base;
  base.tau_max = 25;
  const PresetOutput o = run_preset(Preset::Fig3, base, dir);
  EXPECT_EQ(o.exit_code(), 0);
  for (const char* f : {"fig3_beta1e-3.csv", "fig3_beta1e-4.csv", "fig3_hermitian.csv", "fig3.gp"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  ASSERT_EQ(o.records.size(), 3u);
  const double ratio = o.records[0].summary.N_final / o.records[2].summary.N_final;
  EXPECT_GT(ratio, 3e5);
  EXPECT_LT(ratio, 5e6);
}

TEST(Preset, Names) {
  EXPECT_EQ(preset_from_name("fig2"), Preset::Fig2);
  EXPECT_FALSE(preset_from_name("fig4").has_value());
  EXPECT_EQ(preset_name(Preset::Fig1), "fig1");
}

TEST(Sweep, ConcurrentCellsAndSummary) {
  const fs::path dir = scratch("sweep");
  ScenarioConfig base;
  base.tau_max = 10;
  const SweepResult s = sweep(base, "beta0_tilde", {1e-3, 1e-4, 5.0, 1e-2}, 3, dir);
  ASSERT_EQ(s.cells.size(), 4u);
  EXPECT_EQ(s.cells[2].record.status, 1);  // beta0_tilde > 1 fails validation
  EXPECT_EQ(s.exit_code(), 1);
  EXPECT_GT(s.cells[1].record.summary.amplification, s.cells[0].record.summary.amplification);
  const auto rows = lines_of(s.summary_file);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "value,amplification,r_final,N_final,status");
  EXPECT_NE(rows[3].find("failed"), std::string::npos);
  EXPECT_THROW(sweep(base, "zeta_mode", {1.0}, 1, dir), ValidationError);
}

TEST(Config, KeysAreListed) {
  const auto keys = config_keys();
  EXPECT_NE(std::find(keys.begin(), keys.end(), "eps_mod"), keys.end());
  EXPECT_TRUE(is_numeric_key("chi"));
  EXPECT_FALSE(is_numeric_key("outputs"));
}
