#include "pdce/scenario.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "pdce/dynamics.hpp"
#include "pdce/error.hpp"

namespace pdce {
namespace {

constexpr std::array<std::string_view, 17> kColumnNames = {
    "tau",      "r_numeric", "r_analytic", "phi_numeric_raw", "phi_analytic_raw", "phi_numeric_reduced",
    "phi_analytic_reduced", "N_numeric", "N_analytic", "N_oracle", "W", "T_abs", "phi_T", "Phi", "chi", "varphi",
    "residual_hermiticity"};

constexpr std::array<std::string_view, 5> kSections = {"drive", "dyson", "squeeze", "run", "output"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double parse_double(std::string_view key, std::string_view v, int line) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty())
    throw ParseError(line, "'" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
  return out;
}

int parse_int(std::string_view key, std::string_view v, int line) {
  const double d = parse_double(key, v, line);
  if (d != std::floor(d) || std::abs(d) > 1e9)
    throw ParseError(line, "'" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'");
  return static_cast<int>(d);
}

bool parse_bool(std::string_view key, std::string_view v, int line) {
  const std::string s = lower(v);
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  throw ParseError(line, "'" + std::string(key) + "' expects true or false, got '" + std::string(v) + "'");
}

using Setter = std::function<void(ScenarioConfig&, std::string_view key, std::string_view value, int line)>;

struct KeySpec {
  bool numeric;
  Setter set;
};

Setter real(double ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, std::string_view k, std::string_view v, int line) { c.*field = parse_double(k, v, line); };
}

Setter drive_real(double DriveParams::*field) {
  return [field](ScenarioConfig& c, std::string_view k, std::string_view v, int line) {
    c.drive.*field = parse_double(k, v, line);
  };
}

const std::map<std::string, KeySpec, std::less<>>& key_table() {
  static const std::map<std::string, KeySpec, std::less<>> table = {
      {"omega0", {true, drive_real(&DriveParams::omega0)}},
      {"eps_mod", {true, drive_real(&DriveParams::eps_mod)}},
      {"kappa", {true, drive_real(&DriveParams::kappa)}},
      {"alpha0_tilde", {true, drive_real(&DriveParams::alpha0_tilde)}},
      {"beta0_tilde", {true, drive_real(&DriveParams::beta0_tilde)}},
      {"zeta_mode",
       {false,
        [](ScenarioConfig& c, std::string_view, std::string_view v, int line) {
          const std::string s = lower(v);
          if (s == "exact") c.drive.zeta_mode = ZetaMode::Exact;
          else if (s == "approximate") c.drive.zeta_mode = ZetaMode::Approximate;
          else throw ParseError(line, "zeta_mode expects exact or approximate, got '" + std::string(v) + "'");
        }}},
      {"chi", {true, real(&ScenarioConfig::chi)}},
      {"z_abs", {true, real(&ScenarioConfig::z_abs)}},
      {"varphi0", {true, real(&ScenarioConfig::varphi0)}},
      {"r0", {true, real(&ScenarioConfig::r0)}},
      {"phi0_prime", {true, real(&ScenarioConfig::phi0_prime)}},
      {"tau_max", {true, real(&ScenarioConfig::tau_max)}},
      {"points_per_period",
       {true, [](ScenarioConfig& c, std::string_view, std::string_view v, int line) { c.points_per_period = parse_int("points_per_period", v, line); }}},
      {"dyson_source",
       {false,
        [](ScenarioConfig& c, std::string_view, std::string_view v, int line) {
          const std::string s = lower(v);
          if (s == "approximate") c.dyson_source = DysonRoute::Approximate;
          else if (s == "integrated") c.dyson_source = DysonRoute::Integrated;
          else throw ParseError(line, "dyson_source expects approximate or integrated, got '" + std::string(v) + "'");
        }}},
      {"outputs",
       {false,
        [](ScenarioConfig& c, std::string_view, std::string_view v, int line) {
          std::vector<Column> cols;
          std::string_view rest = v;
          while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = trim(rest.substr(0, comma));
            const auto col = column_from_name(item);
            if (!col) throw ParseError(line, "unknown output column '" + std::string(item) + "'");
            if (std::find(cols.begin(), cols.end(), *col) != cols.end())
              throw ParseError(line, "output column '" + std::string(item) + "' listed twice");
            cols.push_back(*col);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
          }
          c.outputs = std::move(cols);
        }}},
      {"seed_r_epsilon", {true, real(&ScenarioConfig::seed_r_epsilon)}},
      {"oracle", {false, [](ScenarioConfig& c, std::string_view, std::string_view v, int line) { c.oracle = parse_bool("oracle", v, line); }}},
      {"rtol", {true, real(&ScenarioConfig::rtol)}},
      {"atol", {true, real(&ScenarioConfig::atol)}},
  };
  return table;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

void require_columns(ScenarioConfig& cfg, std::initializer_list<Column> needed) {
  if (cfg.outputs.empty()) return;
  for (Column c : needed)
    if (std::find(cfg.outputs.begin(), cfg.outputs.end(), c) == cfg.outputs.end()) cfg.outputs.push_back(c);
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + file.string());
  out << text;
}

std::string gnuplot_header(std::string_view png) {
  std::ostringstream s;
  s << "set terminal pngcairo size 900,600\n"
    << "set output '" << png << "'\n"
    << "set datafile separator ','\n"
    << "set key top left\n"
    << "set xlabel 'tau = omega0 t'\n";
  return s.str();
}

std::string plot_script_fig1(const std::string& csv) {
  return gnuplot_header("fig1.png") + "set ylabel 'phi(t)'\n" + "plot '" + csv +
         "' using 'tau':'phi_analytic_raw' with lines lw 2 title 'closed form', \\\n     '' using 'tau':'phi_numeric_raw' with lines dt 2 lw 2 title 'numerical'\n";
}

std::string plot_script_fig2(const std::string& csv) {
  return gnuplot_header("fig2.png") + "set ylabel 'r(t)'\n" + "plot '" + csv +
         "' using 'tau':'r_analytic' with lines lw 2 title 'closed form', \\\n     '' using 'tau':'r_numeric' with lines dt 2 lw 2 title 'numerical'\n";
}

std::string plot_script_fig3(const std::string& b3, const std::string& b4, const std::string& herm) {
  std::ostringstream s;
  s << gnuplot_header("fig3.png") << "set multiplot\n"
    << "set ylabel 'N(t)'\n"
    << "set logscale y\n"
    << "plot '" << b3 << "' using 'tau':'N_numeric' with lines lw 2 title 'beta0 = 1e-3', \\\n"
    << "     '" << b4 << "' using 'tau':'N_numeric' with lines dt 3 lw 2 title 'beta0 = 1e-4'\n"
    << "unset logscale y\n"
    << "set origin 0.55,0.12\n"
    << "set size 0.4,0.4\n"
    << "set xlabel ''\n"
    << "set ylabel ''\n"
    << "plot '" << herm << "' using 'tau':'N_numeric' with lines lw 2 title 'Hermitian'\n"
    << "unset multiplot\n";
  return s.str();
}

}  // namespace

std::string_view column_name(Column c) noexcept { return kColumnNames[static_cast<std::size_t>(c)]; }

std::optional<Column> column_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kColumnNames.size(); ++i)
    if (kColumnNames[i] == name) return static_cast<Column>(i);
  return std::nullopt;
}

void ScenarioConfig::validate() const {
  drive.validate();
  if (!(std::isfinite(tau_max) && tau_max > 0.0)) throw ValidationError("tau_max > 0", "got " + format_number(tau_max));
  if (points_per_period < 200)
    throw ValidationError("points_per_period >= 200", "got " + std::to_string(points_per_period));
  if (!(z_abs > 0.0 && z_abs <= 1.0)) throw ValidationError("0 < z_abs <= 1", "got " + format_number(z_abs));
  if (!std::isfinite(chi)) throw ValidationError("chi finite", "got " + format_number(chi));
  if (!(std::abs(chi - 1.0) > kDefaultChiGuard)) throw ValidationError("|chi - 1| > chi_guard", "got " + format_number(chi));
  if (!std::isfinite(varphi0)) throw ValidationError("varphi0 finite", "got " + format_number(varphi0));
  if (!(r0 >= 0.0 && std::isfinite(r0))) throw ValidationError("r0 >= 0", "got " + format_number(r0));
  if (!std::isfinite(phi0_prime)) throw ValidationError("phi0_prime finite", "got " + format_number(phi0_prime));
  if (!(seed_r_epsilon > 0.0 && seed_r_epsilon < 1e-3))
    throw ValidationError("0 < seed_r_epsilon < 1e-3", "got " + format_number(seed_r_epsilon));
  if (!(rtol > 0.0 && rtol < 1.0)) throw ValidationError("0 < rtol < 1", "got " + format_number(rtol));
  if (!(atol > 0.0)) throw ValidationError("atol > 0", "got " + format_number(atol));
  if (!oracle && std::find(outputs.begin(), outputs.end(), Column::N_oracle) != outputs.end())
    throw ValidationError("N_oracle requires oracle = true", "column selected without the oracle");
  if (dyson_source == DysonRoute::Integrated) {
    const ConstraintState s = dyson().initial_state();
    if (!(s.Lambda > 0.0) || !realizable(s.z_abs, s.Phi))
      throw ValidationError("realizability |z| > -2 Phi/(1 + Phi^2)",
                            "(z_abs, chi) = (" + format_number(z_abs) + ", " + format_number(chi) + ")");
  }
}

std::vector<Column> ScenarioConfig::columns() const {
  if (!outputs.empty()) return outputs;
  std::vector<Column> all;
  for (std::size_t i = 0; i < kColumnNames.size(); ++i) {
    const auto c = static_cast<Column>(i);
    if (c == Column::N_oracle && !oracle) continue;
    all.push_back(c);
  }
  return all;
}

DysonSource ScenarioConfig::dyson() const {
  DysonSource s;
  s.route = dyson_source;
  s.chi = chi;
  s.varphi0 = varphi0;
  s.z_abs = z_abs;
  return s;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, spec] : key_table()) keys.push_back(k);
  return keys;
}

bool is_numeric_key(std::string_view key) noexcept {
  const auto& t = key_table();
  const auto it = t.find(key);
  return it != t.end() && it->second.numeric;
}

void apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value, int line) {
  const auto& t = key_table();
  const auto it = t.find(key);
  if (it == t.end()) throw ParseError(line, "unknown key '" + std::string(key) + "'");
  it->second.set(cfg, key, value, line);
}

void set_numeric(ScenarioConfig& cfg, std::string_view key, double value) {
  if (!is_numeric_key(key)) throw ValidationError("sweep axis is a numeric key", "'" + std::string(key) + "'");
  apply_setting(cfg, key, format_number(value));
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::vector<std::string> seen;
  int line_no = 0;
  std::string_view rest = text;
  while (!rest.empty() || line_no == 0) {
    ++line_no;
    const auto nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (rest.empty()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), name) == kSections.end())
        throw ParseError(line_no, "unknown section '" + std::string(name) + "'");
    } else {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
      const std::string key(trim(line.substr(0, eq)));
      const std::string_view value = trim(line.substr(eq + 1));
      if (key.empty()) throw ParseError(line_no, "missing key");
      if (std::find(seen.begin(), seen.end(), key) != seen.end())
        throw ParseError(line_no, "duplicate key '" + key + "'");
      seen.push_back(key);
      apply_setting(cfg, key, value, line_no);
    }
    if (rest.empty()) break;
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError(0, "cannot read config file " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 40> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

RunRecord run(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.config = cfg;
  rec.columns = cfg.columns();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    const DysonSource source = cfg.dyson();
    const GridSpec grid{cfg.tau_max, cfg.points_per_period};
    EvolveOptions eo;
    eo.r0 = cfg.r0;
    eo.phi0 = initial_squeeze_phase(cfg.drive, cfg.chi, cfg.phi0_prime);
    eo.r_seed = cfg.seed_r_epsilon;
    eo.integrator.rtol = cfg.rtol;
    eo.integrator.atol = cfg.atol;
    const Trajectory traj = evolve(cfg.drive, source, grid, eo);

    std::optional<OracleSolution> oracle;
    rec.residuals.max_oracle_relative_error = nan;
    if (cfg.oracle) {
      oracle = bogoliubov_ode_oracle(cfg.drive, source, grid);
      rec.residuals.max_oracle_relative_error = 0.0;
      for (std::size_t k = 1; k < traj.points.size(); ++k)
        rec.residuals.max_oracle_relative_error = std::max(
            rec.residuals.max_oracle_relative_error, relative_difference(traj.points[k].photons, oracle->photons[k]));
    }

    const bool analytic = cfg.drive.on_resonance();
    rec.rows.reserve(traj.points.size());
    for (std::size_t k = 0; k < traj.points.size(); ++k) {
      const TrajectoryPoint& pt = traj.points[k];
      AnalyticSqueeze an{nan, nan};
      if (analytic) an = analytic_squeeze(pt.t, cfg.drive, cfg.chi, cfg.r0, cfg.phi0_prime, SqueezeForm::LongTime);
      std::vector<double> row;
      row.reserve(rec.columns.size());
      for (Column c : rec.columns) {
        switch (c) {
          case Column::tau: row.push_back(cfg.drive.omega0 * pt.t); break;
          case Column::r_numeric: row.push_back(pt.squeeze.r); break;
          case Column::r_analytic: row.push_back(an.r); break;
          case Column::phi_numeric_raw: row.push_back(pt.squeeze.phi); break;
          case Column::phi_analytic_raw: row.push_back(an.phi); break;
          case Column::phi_numeric_reduced: row.push_back(std::remainder(pt.squeeze.phi, 2.0 * kPi)); break;
          case Column::phi_analytic_reduced: row.push_back(std::remainder(an.phi, 2.0 * kPi)); break;
          case Column::N_numeric: row.push_back(pt.photons); break;
          case Column::N_analytic: row.push_back(std::pow(std::sinh(an.r), 2)); break;
          case Column::N_oracle: row.push_back(oracle ? oracle->photons[k] : nan); break;
          case Column::W: row.push_back(pt.coeffs.W); break;
          case Column::T_abs: row.push_back(pt.coeffs.T_abs); break;
          case Column::phi_T: row.push_back(pt.coeffs.phi_T); break;
          case Column::Phi: row.push_back(pt.constraint.Phi); break;
          case Column::chi: row.push_back(pt.constraint.chi()); break;
          case Column::varphi: row.push_back(pt.constraint.varphi); break;
          case Column::residual_hermiticity: row.push_back(pt.hermiticity_residual); break;
        }
      }
      rec.rows.push_back(std::move(row));
    }

    const TrajectoryPoint& last = traj.points.back();
    rec.summary.tau_final = cfg.drive.omega0 * last.t;
    rec.summary.r_final = last.squeeze.r;
    rec.summary.N_final = last.photons;
    rec.summary.amplification = amplification_factor(cfg.drive.alpha0_tilde, cfg.drive.beta0_tilde, cfg.chi);
    rec.residuals.max_hermiticity = traj.max_hermiticity_residual;
    rec.residuals.max_identity_defect = traj.max_identity_defect;
    rec.residuals.max_lambda_drift = traj.max_lambda_drift;
  } catch (const Error& e) {
    rec.error = e.what();
    rec.status = 2;
  }
  rec.wall_seconds = seconds_since(start);
  return rec;
}

void write_csv(std::ostream& out, const RunRecord& record) {
  for (std::size_t i = 0; i < record.columns.size(); ++i)
    out << (i ? "," : "") << column_name(record.columns[i]);
  out << '\n';
  for (const auto& row : record.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& file, const RunRecord& record) {
  std::ostringstream s;
  write_csv(s, record);
  write_text(file, s.str());
}

std::optional<Preset> preset_from_name(std::string_view name) noexcept {
  if (name == "fig1") return Preset::Fig1;
  if (name == "fig2") return Preset::Fig2;
  if (name == "fig3") return Preset::Fig3;
  return std::nullopt;
}

std::string_view preset_name(Preset p) noexcept {
  switch (p) {
    case Preset::Fig1: return "fig1";
    case Preset::Fig2: return "fig2";
    case Preset::Fig3: return "fig3";
  }
  return "";
}

int PresetOutput::exit_code() const noexcept {
  int code = 0;
  for (const auto& r : records) code = std::max(code, r.status);
  return code;
}

PresetOutput run_preset(Preset p, const ScenarioConfig& base, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  PresetOutput out;
  auto emit = [&](const ScenarioConfig& cfg, const std::string& csv) {
    out.records.push_back(run(cfg));
    if (out.records.back().ok()) {
      write_csv(out_dir / csv, out.records.back());
      out.files.push_back(out_dir / csv);
    }
  };
  auto script = [&](const std::string& name, const std::string& text) {
    write_text(out_dir / name, text);
    out.files.push_back(out_dir / name);
  };

  switch (p) {
    case Preset::Fig1: {
      ScenarioConfig cfg = base;
      require_columns(cfg, {Column::tau, Column::phi_numeric_raw, Column::phi_analytic_raw});
      emit(cfg, "fig1.csv");
      script("fig1.gp", plot_script_fig1("fig1.csv"));
      break;
    }
    case Preset::Fig2: {
      ScenarioConfig cfg = base;
      require_columns(cfg, {Column::tau, Column::r_numeric, Column::r_analytic});
      emit(cfg, "fig2.csv");
      script("fig2.gp", plot_script_fig2("fig2.csv"));
      break;
    }
    case Preset::Fig3: {
      ScenarioConfig cfg = base;
      require_columns(cfg, {Column::tau, Column::N_numeric});
      cfg.drive.beta0_tilde = 1e-3;
      emit(cfg, "fig3_beta1e-3.csv");
      cfg.drive.beta0_tilde = 1e-4;
      emit(cfg, "fig3_beta1e-4.csv");
      cfg.drive.alpha0_tilde = 1.0;
      cfg.drive.beta0_tilde = 1.0;
      emit(cfg, "fig3_hermitian.csv");
      script("fig3.gp", plot_script_fig3("fig3_beta1e-3.csv", "fig3_beta1e-4.csv", "fig3_hermitian.csv"));
      break;
    }
  }
  return out;
}

int SweepResult::exit_code() const noexcept {
  int code = 0;
  for (const auto& c : cells) code = std::max(code, c.record.status);
  return code;
}

SweepResult sweep(const ScenarioConfig& base, const std::string& axis, const std::vector<double>& values,
                  int workers, const std::filesystem::path& out_dir) {
  if (!is_numeric_key(axis)) throw ValidationError("sweep axis is a numeric key", "'" + axis + "'");
  if (values.empty()) throw ValidationError("sweep needs at least one value", "empty value list");
  if (workers < 1) throw ValidationError("workers >= 1", "got " + std::to_string(workers));
  std::filesystem::create_directories(out_dir);

  SweepResult result;
  result.axis = axis;
  result.cells.resize(values.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepCell& cell = result.cells[i];
      cell.value = values[i];
      ScenarioConfig cfg = base;
      try {
        set_numeric(cfg, axis, values[i]);
        cell.record = run(cfg);
      } catch (const Error& e) {
        cell.record.config = cfg;
        cell.record.error = e.what();
        cell.record.status = 1;
      }
      if (cell.record.ok()) write_csv(out_dir / ("sweep_" + axis + "_" + std::to_string(i) + ".csv"), cell.record);
    }
  };
  const int n = std::min<int>(workers, static_cast<int>(values.size()));
  std::vector<std::jthread> pool;
  for (int w = 1; w < n; ++w) pool.emplace_back(work);
  work();
  pool.clear();

  std::ostringstream s;
  s << "value,amplification,r_final,N_final,status\n";
  for (const auto& c : result.cells) {
    const bool ok = c.record.ok();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s << format_number(c.value) << ',' << format_number(ok ? c.record.summary.amplification : nan) << ','
      << format_number(ok ? c.record.summary.r_final : nan) << ',' << format_number(ok ? c.record.summary.N_final : nan)
      << ',' << (ok ? std::string("ok") : "failed") << '\n';
  }
  result.summary_file = out_dir / ("sweep_" + axis + "_summary.csv");
  write_text(result.summary_file, s.str());
  return result;
}

}  // namespace pdce
