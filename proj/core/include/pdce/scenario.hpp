#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "pdce/drive.hpp"
#include "pdce/hermitian.hpp"

namespace pdce {

enum class Column {
  tau,
  r_numeric,
  r_analytic,
  phi_numeric_raw,
  phi_analytic_raw,
  phi_numeric_reduced,
  phi_analytic_reduced,
  N_numeric,
  N_analytic,
  N_oracle,
  W,
  T_abs,
  phi_T,
  Phi,
  chi,
  varphi,
  residual_hermiticity,
};

std::string_view column_name(Column c) noexcept;
std::optional<Column> column_from_name(std::string_view name) noexcept;

struct ScenarioConfig {
  DriveParams drive;
  double chi = 1.0002;
  double z_abs = 1.0 - 1e-9;
  double varphi0 = kPi / 2;
  double r0 = 0.0;
  double phi0_prime = 0.0;
  double tau_max = 50.0;
  int points_per_period = 200;
  DysonRoute dyson_source = DysonRoute::Approximate;
  // Empty selects every column (N_oracle only when the oracle is on).
  std::vector<Column> outputs;
  double seed_r_epsilon = 1e-8;
  bool oracle = false;
  double rtol = 1e-9;
  double atol = 1e-12;

  void validate() const;
  std::vector<Column> columns() const;
  DysonSource dyson() const;
};

// Flat `key = value` text, `#` comments, optional [section] headers.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& file);
// Applies one textual setting; throws ParseError/ValidationError.
void apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value, int line = 0);
bool is_numeric_key(std::string_view key) noexcept;
std::vector<std::string> config_keys();

std::string format_number(double v);

struct RunSummary {
  double tau_final = 0.0;
  double r_final = 0.0;
  double N_final = 0.0;
  double amplification = 0.0;
};

struct RunResiduals {
  double max_hermiticity = 0.0;
  double max_identity_defect = 0.0;
  double max_lambda_drift = 0.0;
  // NaN unless the oracle is enabled.
  double max_oracle_relative_error = 0.0;
};

struct RunRecord {
  ScenarioConfig config;
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
  RunSummary summary;
  RunResiduals residuals;
  double wall_seconds = 0.0;
  std::optional<std::string> error;
  // 0 success, 1 validation error, 2 simulation error.
  int status = 0;

  bool ok() const noexcept { return status == 0; }
};

// Throws ValidationError for an invalid config; simulation errors are
// captured in the record.
RunRecord run(const ScenarioConfig& cfg);
void write_csv(std::ostream& out, const RunRecord& record);
void write_csv(const std::filesystem::path& file, const RunRecord& record);

enum class Preset { Fig1, Fig2, Fig3 };

std::optional<Preset> preset_from_name(std::string_view name) noexcept;
std::string_view preset_name(Preset p) noexcept;

struct PresetOutput {
  std::vector<RunRecord> records;
  std::vector<std::filesystem::path> files;

  int exit_code() const noexcept;
};

// Runs the preset's scenarios, writing CSV files and a gnuplot script.
PresetOutput run_preset(Preset p, const ScenarioConfig& base, const std::filesystem::path& out_dir);

struct SweepCell {
  double value = 0.0;
  RunRecord record;
};

struct SweepResult {
  std::string axis;
  std::vector<SweepCell> cells;
  std::filesystem::path summary_file;

  int exit_code() const noexcept;
};

void set_numeric(ScenarioConfig& cfg, std::string_view key, double value);

// Cells run on up to `workers` threads; each writes its own CSV and the
// caller's thread writes the summary.
SweepResult sweep(const ScenarioConfig& base, const std::string& axis, const std::vector<double>& values,
                  int workers, const std::filesystem::path& out_dir);

}  // namespace pdce
