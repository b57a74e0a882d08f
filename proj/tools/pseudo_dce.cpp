#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pdce/error.hpp"
#include "pdce/scenario.hpp"
#include "pdce/verify.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kInput = 1, kSimulation = 2, kVerifyFailed = 3 };

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("PSEUDO_DCE_OUT"); env && *env) return env;
  return fs::current_path();
}

pdce::ScenarioConfig config_from(const std::string& file) {
  return file.empty() ? pdce::ScenarioConfig{} : pdce::load_config(file);
}

void print_summary(const pdce::RunRecord& r, const fs::path& file) {
  std::cout << file.string() << ": ";
  if (!r.ok()) {
    std::cout << "failed (" << r.error.value_or("unknown error") << ")\n";
    return;
  }
  std::cout << "tau = " << pdce::format_number(r.summary.tau_final) << ", r = " << pdce::format_number(r.summary.r_final)
            << ", N = " << pdce::format_number(r.summary.N_final)
            << ", amplification = " << pdce::format_number(r.summary.amplification) << ", " << r.rows.size()
            << " rows in " << r.wall_seconds << " s\n";
}

int cmd_run(const std::string& config, const std::string& preset, const std::string& out) {
  const pdce::ScenarioConfig cfg = config_from(config);
  const fs::path dir = output_dir(out);
  fs::create_directories(dir);
  if (!preset.empty()) {
    const auto p = pdce::preset_from_name(preset);
    if (!p) throw pdce::Error(pdce::Errc::InvalidArgument, "unknown preset '" + preset + "'");
    const pdce::PresetOutput o = pdce::run_preset(*p, cfg, dir);
    for (std::size_t k = 0; k < o.records.size(); ++k) print_summary(o.records[k], o.files[k]);
    return o.exit_code();
  }
  cfg.validate();
  const pdce::RunRecord r = pdce::run(cfg);
  const fs::path file = dir / "run.csv";
  pdce::write_csv(file, r);
  print_summary(r, file);
  return r.ok() ? kOk : kSimulation;
}

int cmd_verify(const std::string& level, bool fault) {
  pdce::VerifyOptions o;
  o.level = level == "full" ? pdce::VerifyLevel::Full : pdce::VerifyLevel::Fast;
  if (fault) o.fault = pdce::Fault::FlipSqueezeGrowth;
  const pdce::VerifyReport report = pdce::verify(o);
  std::cout << report.to_json() << '\n';
  for (const auto& c : report.checks)
    if (!c.passed) std::cerr << "FAIL " << c.name << ": " << c.detail << '\n';
  return report.all_passed() ? kOk : kVerifyFailed;
}

int cmd_sweep(const std::string& config, const std::string& axis, const std::vector<double>& values, int workers,
              const std::string& out) {
  const pdce::ScenarioConfig cfg = config_from(config);
  const fs::path dir = output_dir(out);
  fs::create_directories(dir);
  const pdce::SweepResult s = pdce::sweep(cfg, axis, values, workers, dir);
  for (const auto& cell : s.cells) {
    std::cout << axis << " = " << pdce::format_number(cell.value) << ": ";
    if (cell.record.ok())
      std::cout << "amplification = " << pdce::format_number(cell.record.summary.amplification)
                << ", N = " << pdce::format_number(cell.record.summary.N_final) << '\n';
    else
      std::cout << "failed (" << cell.record.error.value_or("unknown error") << ")\n";
  }
  std::cout << "summary: " << s.summary_file.string() << '\n';
  return s.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-Hermitian dynamical Casimir effect simulator"};
  app.require_subcommand(1);

  std::string config, preset, out, level = "fast", axis;
  std::string fault_name;
  std::vector<double> values;
  int workers = 1;

  auto* run = app.add_subcommand("run", "Run a scenario or a figure preset and write CSV output");
  run->add_option("--config", config, "Scenario config file (defaults apply when omitted)")->check(CLI::ExistingFile);
  run->add_option("--preset", preset, "Figure preset")->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  run->add_option("--out", out, "Output directory (default: $PSEUDO_DCE_OUT or the working directory)");

  auto* ver = app.add_subcommand("verify", "Run the verification suite and print a JSON report");
  ver->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  ver->add_option("--inject-fault", fault_name, "Negative control: flip the sign of the squeeze growth rate")
      ->check(CLI::IsMember({"squeeze-growth"}));

  auto* sw = app.add_subcommand("sweep", "Run one scenario per value of a numeric config key");
  sw->add_option("--config", config, "Base scenario config file")->check(CLI::ExistingFile);
  sw->add_option("--axis", axis, "Numeric config key to vary")->required();
  sw->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');
  sw->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  sw->add_option("--out", out, "Output directory (default: $PSEUDO_DCE_OUT or the working directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*run) return cmd_run(config, preset, out);
    if (*ver) return cmd_verify(level, !fault_name.empty());
    return cmd_sweep(config, axis, values, workers, out);
  } catch (const pdce::ParseError& e) {
    std::cerr << "error: " << config << ": " << e.what() << '\n';
    return kInput;
  } catch (const pdce::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const pdce::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == pdce::Errc::InvalidArgument ? kInput : kSimulation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSimulation;
  }
}
