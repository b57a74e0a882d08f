#include "pdce/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <utility>

#include "json.hpp"

#include "pdce/dyson.hpp"
#include "pdce/error.hpp"
#include "pdce/fock.hpp"
#include "pdce/ode.hpp"

namespace pdce {

namespace regimes {

Regime fig1() {
  Regime r;
  r.drive.alpha0_tilde = 1e-2;
  r.drive.beta0_tilde = 1e-3;
  r.drive.eps_mod = 1e-2;
  return r;
}

Regime hermitian() {
  Regime r = fig1();
  r.drive.alpha0_tilde = 1.0;
  r.drive.beta0_tilde = 1.0;
  return r;
}

Regime regular_integrated() {
  Regime r;
  r.drive.eps_mod = 0.05;
  r.drive.alpha0_tilde = 0.6;
  r.drive.beta0_tilde = 0.2;
  r.source.route = DysonRoute::Integrated;
  r.source.chi = -2.2;
  r.source.z_abs = 0.5;
  return r;
}

}  // namespace regimes

namespace {

using cd = std::complex<double>;

double period(const DriveParams& p) { return 2.0 * kPi / p.kappa; }

// Aux state of the model at t, integrated tightly from t = 0.
std::vector<double> aux_at(const CoefficientModel& m, double t) {
  std::vector<double> y = m.initial_aux();
  if (t <= 0.0 || m.aux_dimension() == 0) return y;
  ode::IvpProblem prob;
  prob.dimension = m.aux_dimension();
  prob.rhs = [&m](double s, std::span<const double> a, std::span<double> da) { m.aux_rhs(s, a, da); };
  prob.t1 = t;
  prob.y0 = y;
  prob.output_times = {t};
  ode::IntegratorOptions o;
  o.rtol = 1e-12;
  o.atol = 1e-14;
  return ode::integrate(prob, o).states.back();
}

// One RK4 step of size |h| forward (h > 0) or backward (h < 0) from (t, y).
std::vector<double> aux_step(const CoefficientModel& m, double t, const std::vector<double>& y, double h) {
  if (m.aux_dimension() == 0) return y;
  ode::IvpProblem prob;
  prob.dimension = m.aux_dimension();
  const double sign = h > 0.0 ? 1.0 : -1.0;
  prob.rhs = [&m, t, sign](double s, std::span<const double> a, std::span<double> da) {
    m.aux_rhs(t + sign * s, a, da);
    if (sign < 0.0)
      for (double& v : da) v = -v;
  };
  prob.t1 = std::abs(h);
  prob.y0 = y;
  prob.output_times = {std::abs(h)};
  ode::IntegratorOptions o;
  o.method = ode::Method::Rk4Fixed;
  o.step = std::abs(h);
  return ode::integrate(prob, o).states.back();
}

Matrix restricted_metric(const DysonState& d, const FockSpace& big, int dim) {
  const Matrix eta = eta_matrix(d.eps_map(), d.mu(), big, EtaForm::GaussProduct);
  return metric(eta).topLeftCorner(dim, dim);
}

double wrap(double x) { return std::remainder(x, 2.0 * kPi); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

class Suite {
 public:
  explicit Suite(const VerifyOptions& o) : options_(o) {}

  EvolveOptions evolve_options() const {
    EvolveOptions e;
    if (options_.fault == Fault::FlipSqueezeGrowth)
      e.squeeze = [](const SqueezeState& s, const HermitizedCoeffs& c) {
        SqueezeRates r = squeeze_rhs(s, c);
        r.r = -r.r;
        return r;
      };
    return e;
  }

  Trajectory run(const Regime& g, const GridSpec& grid, EvolveOptions e) {
    Trajectory tr = evolve(g.drive, g.source, grid, e);
    for (const auto& pt : tr.points) track_identity(pt.uvw.u, pt.uvw.v);
    return tr;
  }

  void track_identity(cd u, cd v) {
    const double scale = std::max(1.0, std::norm(u) + std::norm(v));
    identity_ = std::max(identity_, std::abs(std::norm(u) - std::norm(v) - 1.0) / scale);
    identity_samples_ += 1;
  }

  void check(std::string name, double threshold, const std::function<std::pair<double, std::string>()>& body,
             const std::function<bool(double, double)>& pass = std::less<double>{}) {
    CheckResult r;
    r.name = std::move(name);
    r.threshold = threshold;
    const auto start = std::chrono::steady_clock::now();
    try {
      auto [value, detail] = body();
      r.value = value;
      r.detail = std::move(detail);
      r.passed = std::isfinite(value) && pass(value, threshold);
    } catch (const std::exception& e) {
      r.value = std::nan("");
      r.detail = std::string("exception: ") + e.what();
      r.passed = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    checks_.push_back(std::move(r));
  }

  double identity_defect() const { return identity_; }
  std::size_t identity_samples() const { return identity_samples_; }
  std::vector<CheckResult> take() { return std::move(checks_); }

 private:
  VerifyOptions options_;
  std::vector<CheckResult> checks_;
  double identity_ = 0.0;
  std::size_t identity_samples_ = 0;
};

const auto greater_equal = [](double v, double t) { return v >= t; };

void drive_checks(Suite& s) {
  s.check("drive.alpha_beta_polar", 1e-15, [] {
    double worst = 0.0;
    DriveParams p = regimes::fig1().drive;
    for (int k = 0; k < 400; ++k) {
      const double t = 0.037 * k;
      const AlphaBeta ab = alpha_beta(t, p);
      const double z = zeta_signed(t, p);
      worst = std::max(worst, std::abs(ab.alpha.value() - cd{0.0, -p.alpha0_tilde * z}));
      worst = std::max(worst, std::abs(ab.beta.value() - cd{0.0, p.beta0_tilde * z}));
    }
    return std::pair{worst, std::string("|polar - cartesian| over 400 times")};
  });
  s.check("drive.zeta_modes", 1.0, [] {
    DriveParams exact = regimes::fig1().drive;
    exact.zeta_mode = ZetaMode::Exact;
    DriveParams approx = exact;
    approx.zeta_mode = ZetaMode::Approximate;
    double worst = 0.0;
    for (int k = 0; k < 400; ++k) {
      const double t = 0.037 * k;
      worst = std::max(worst, std::abs(zeta_signed(t, exact) - zeta_signed(t, approx)));
    }
    // Differences are second order in the modulation depth.
    const double scale = exact.eps_mod * exact.eps_mod * exact.kappa;
    return std::pair{worst / scale, std::string("max |exact - approx| / (eps^2 kappa)")};
  });
}

void dyson_checks(Suite& s) {
  s.check("dyson.round_trip", 1e-10, [] {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) {
        const double z = 0.05 + 0.9 * i / 9.0;
        const double eps = 0.02 + 1.5 * j / 9.0;
        const PhiChi pc = phi_from_z(z, eps);
        worst = std::max(worst, std::abs(epsilon_from_phi(z, pc.Phi) - eps) / eps);
      }
    return std::pair{worst, std::string("relative eps error over 100 (|z|, eps) points")};
  });
  s.check("dyson.mixing_determinant", 1e-12, [] {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const DysonState d = DysonState::from_map(0.05 + 0.03 * k, std::polar(0.01 + 0.004 * k, 0.3 * k));
      worst = std::max(worst, std::abs(bogoliubov_matrix(d).determinant() - 1.0));
      worst = std::max(worst, std::abs(d.chi() - (d.Phi() * d.Phi() - d.Lambda())));
    }
    return std::pair{worst, std::string("|det M - 1| and chi identity")};
  });
}

std::vector<std::pair<double, cd>> map_grid() {
  std::vector<std::pair<double, cd>> g;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j) {
      const double eps = 0.05 + 0.05 * i;
      const double z = 0.15 + 0.2 * j;
      g.emplace_back(eps, std::polar(0.5 * eps * z, 0.7 * (4 * i + j)));
    }
  return g;
}

void fock_algebra_checks(Suite& s) {
  s.check("fock.gauss_decomposition", 1e-8, [] {
    const FockSpace f(64);
    const int keep = 41;
    double worst = 0.0;
    for (const auto& [eps, mu] : map_grid()) {
      const Matrix e = eta_matrix(eps, mu, f, EtaForm::Exponential).topLeftCorner(keep, keep);
      const Matrix g = eta_matrix(eps, mu, f, EtaForm::GaussProduct).topLeftCorner(keep, keep);
      worst = std::max(worst, (e - g).norm() / e.norm());
    }
    return std::pair{worst, std::string("Frobenius relative difference, dim 64, levels 0..40, 20 maps")};
  });
  s.check("fock.conjugation", 1e-6, [] {
    const int dim = 64, pad = 64;
    const FockSpace big(dim + pad);
    const int keep = dim - kEdgeBand;
    double worst = 0.0;
    for (const auto& [eps, mu] : map_grid()) {
      const Matrix eta = eta_matrix(eps, mu, big, EtaForm::GaussProduct);
      const Matrix inv = eta_matrix(-eps, -mu, big, EtaForm::GaussProduct);
      const Matrix lhs = (eta * big.a() * inv).topLeftCorner(keep, keep);
      const Eigen::Matrix2cd M = bogoliubov_matrix(DysonState::from_map(eps, mu));
      const Matrix rhs = (M(0, 0) * big.a() + M(0, 1) * big.adag()).topLeftCorner(keep, keep);
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff() / rhs.cwiseAbs().maxCoeff());
    }
    return std::pair{worst, std::string("eta a eta^-1 against mixing matrix, trusted block")};
  });
}

void hermitian_checks(Suite& s) {
  s.check("hermitian.general_vs_polar", 1e-9, [] {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> uz(0.1, 0.95), uphi(-2.0, -0.2), uvar(-kPi, kPi), ul(0.1, 2.0),
        ut(0.0, 50.0);
    const DriveParams p = regimes::regular_integrated().drive;
    double worst = 0.0;
    int n = 0;
    while (n < 1000) {
      ConstraintState c{uz(rng), uphi(rng), uvar(rng), ul(rng)};
      if (std::abs(c.chi() - 1.0) < 0.05) continue;
      const double t = ut(rng);
      const DriveSample d = DriveSample::at(t, p);
      const ConstraintRates a = constraint_rhs_general(c, d), b = constraint_rhs_polar(c, p, t);
      const HermitizedCoeffs h1 = hermitized_coefficients(c, p, t), h2 = hermitized_coefficients_general(c, d);
      const double scale = 1.0 + std::abs(a.Phi) + std::abs(a.varphi) + std::abs(a.Lambda) + std::abs(a.z_abs);
      worst = std::max({worst, std::abs(a.Phi - b.Phi) / scale, std::abs(a.varphi - b.varphi) / scale,
                        std::abs(a.Lambda - b.Lambda) / scale, std::abs(a.z_abs - b.z_abs) / scale,
                        std::abs(h1.W - h2.W) / (1.0 + std::abs(h1.W)),
                        std::abs(h1.T() - h2.T()) / (1.0 + h1.T_abs)});
      ++n;
    }
    return std::pair{worst, std::string("1000 random states")};
  });
}

void integrated_checks(Suite& s) {
  const Regime reg = regimes::regular_integrated();
  Trajectory tr;
  s.check("hermitian.integrated_residual", 1e-7, [&] {
    tr = s.run(reg, {50.0, 200}, s.evolve_options());
    return std::pair{tr.max_hermiticity_residual, std::string("max(|Im W|, |V - conj T|), tau <= 50")};
  });
  s.check("hermitian.integrated_drift", 1e-6, [&] {
    if (tr.points.empty()) throw Error(Errc::InvalidArgument, "trajectory unavailable");
    return std::pair{std::max(tr.max_lambda_drift, tr.max_z_drift), std::string("Lambda and |z| monitor drift")};
  });
  s.check("hermitian.fig1_integrated_chi_crossing", 0.5, [&] {
    const Regime f = regimes::fig1();
    DysonSource src = f.source;
    src.route = DysonRoute::Integrated;
    try {
      evolve(f.drive, src, {50.0, 200});
    } catch (const Error& e) {
      if (e.code() == Errc::ChiSingular) return std::pair{1.0, std::string(e.what())};
      throw;
    }
    return std::pair{0.0, std::string("no ChiSingular raised")};
  }, greater_equal);
}

void dynamics_checks(Suite& s) {
  const Regime herm = regimes::hermitian();
  const Regime f1 = regimes::fig1();
  const double chi = f1.source.chi;

  s.check("dynamics.hermitian_baseline", 1.0, [&] {
    const Trajectory tr = s.run(herm, {100.0, 200}, s.evolve_options());
    const auto& pt = tr.points.back();
    const double er = std::abs(pt.squeeze.r - 0.5) / 0.5;
    const double en = rel(pt.photons, std::pow(std::sinh(pt.squeeze.r), 2));
    // Normalized so that 1 is the acceptance edge of either tolerance.
    return std::pair{std::max(er / 0.02, en / 0.04),
                     "r(100) = " + std::to_string(pt.squeeze.r) + ", N = " + std::to_string(pt.photons)};
  });

  EvolveOptions e1 = s.evolve_options();
  e1.phi0 = initial_squeeze_phase(f1.drive, chi, 0.0);
  Trajectory fig1;
  s.check("dynamics.fig2_squeeze", 0.05, [&] {
    fig1 = s.run(f1, {50.0, 200}, e1);
    double worst = 0.0;
    for (const auto& pt : fig1.points) {
      if (pt.t * f1.drive.omega0 < 10.0) continue;
      const AnalyticSqueeze a = analytic_squeeze(pt.t, f1.drive, chi, 0.0, 0.0, SqueezeForm::LongTime);
      worst = std::max(worst, std::abs(pt.squeeze.r - a.r) / a.r);
    }
    return std::pair{worst, std::string("relative r error, tau in [10, 50]")};
  });
  s.check("dynamics.fig1_phase", 0.1, [&] {
    if (fig1.points.empty()) throw Error(Errc::InvalidArgument, "trajectory unavailable");
    double worst = 0.0, at = 0.0;
    for (const auto& pt : fig1.points) {
      const AnalyticSqueeze a = analytic_squeeze(pt.t, f1.drive, chi, 0.0, 0.0, SqueezeForm::LongTime);
      const double d = std::abs(wrap(pt.squeeze.phi - a.phi));
      if (d > worst) worst = d, at = pt.t;
    }
    return std::pair{worst, "max reduced |dphi| over tau in [0, 50], worst at tau = " + std::to_string(at)};
  });
  s.check("dynamics.r_growth", 0.95, [&] {
    if (fig1.points.empty()) throw Error(Errc::InvalidArgument, "trajectory unavailable");
    const auto& pt = fig1.points.back();
    const AnalyticSqueeze a = analytic_squeeze(pt.t, f1.drive, chi, 0.0, 0.0, SqueezeForm::LongTime);
    return std::pair{pt.squeeze.r / a.r, "r(50) = " + std::to_string(pt.squeeze.r) + " against closed form"};
  }, greater_equal);

  s.check("dynamics.amplification", 1e-3, [&] {
    double worst = 0.0;
    for (double c : {-3.0, -0.5, 0.0, 0.5, 2.0, 10.0}) worst = std::max(worst, std::abs(amplification_factor(1, 1, c) - 1));
    worst = std::max(worst, std::abs(amplification_factor(0.01, 1e-3, 1.0002) - 44.999));
    return std::pair{worst, std::string("unit factor for the Hermitian drive and the fig1 preset value")};
  }, [](double v, double t) { return v <= t; });

  s.check("dynamics.fig3_enhancement", 1.0, [&] {
    Regime b4 = f1;
    b4.drive.beta0_tilde = 1e-4;
    const GridSpec g{25.0, 200};
    const Trajectory t3 = s.run(f1, g, e1);
    EvolveOptions e4 = s.evolve_options();
    e4.phi0 = initial_squeeze_phase(b4.drive, chi, 0.0);
    const Trajectory t4 = s.run(b4, g, e4);
    const Trajectory th = s.run(herm, g, s.evolve_options());
    const double ratio = t3.points.back().photons / th.points.back().photons;
    bool ordered = true;
    for (std::size_t k = 0; k < t3.points.size(); ++k)
      if (t3.points[k].t * f1.drive.omega0 > 1.0 && !(t4.points[k].photons > t3.points[k].photons)) ordered = false;
    const bool ok = ratio >= 3e5 && ratio <= 5e6 && ordered;
    return std::pair{ok ? 0.0 : 2.0, "N ratio at tau = 25: " + std::to_string(ratio) +
                                         (ordered ? ", beta 1e-4 above 1e-3" : ", ordering violated")};
  });

  s.check("dynamics.route_triangulation", 1e-4, [&] {
    const GridSpec g{20.0, 200};
    const Trajectory tr = s.run(f1, g, e1);
    const OracleSolution o = bogoliubov_ode_oracle(f1.drive, f1.source, g);
    for (std::size_t k = 0; k < o.times.size(); ++k) s.track_identity(o.u[k], o.v[k]);
    double worst = 0.0;
    for (std::size_t k = 1; k < o.times.size(); ++k) {
      const double a = std::pow(std::sinh(tr.points[k].squeeze.r), 2);
      const double b = std::norm(tr.points[k].uvw.v);
      const double c = o.photons[k];
      worst = std::max({worst, rel(a, b), rel(a, c), rel(b, c)});
    }
    return std::pair{worst, std::string("pairwise photon-number routes, tau in (0, 20]")};
  });

  s.check("dynamics.seed_sensitivity", 1e-6, [&] {
    EvolveOptions lo = e1;
    lo.r_seed = 1e-10;
    const Trajectory a = evolve(f1.drive, f1.source, {50.0, 200}, e1);
    const Trajectory b = evolve(f1.drive, f1.source, {50.0, 200}, lo);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.points.size(); ++k)
      if (a.points[k].t * f1.drive.omega0 >= 1.0) worst = std::max(worst, rel(a.points[k].squeeze.r, b.points[k].squeeze.r));
    return std::pair{worst, std::string("relative r change for r seed 1e-8 -> 1e-10, tau >= 1")};
  });
}

void quasi_hermiticity_checks(Suite& s) {
  const Regime reg = regimes::regular_integrated();
  s.check("fock.quasi_hermiticity", 1e-5, [&] {
    double worst = 0.0, control = std::numeric_limits<double>::infinity();
    for (double t : {7.3, 25.0, 49.0}) {
      const QuasiHermiticityProbe q = probe_quasi_hermiticity(reg, t, 64, 64);
      worst = std::max(worst, q.residual);
      control = std::min(control, q.negative_control);
    }
    return std::pair{worst, "integrated Dyson trajectory at t = 7.3, 25, 49; identity-metric control " +
                                std::to_string(control)};
  });
  s.check("fock.quasi_hermiticity_control_ratio", 1e3, [&] {
    const QuasiHermiticityProbe q = probe_quasi_hermiticity(reg, 7.3, 64, 64);
    return std::pair{q.negative_control / q.residual, std::string("identity-metric residual over true residual")};
  }, greater_equal);
  s.check("fock.metric_expectation", 1e-5, [&] {
    const int dim = 40, pad = 40;
    const double t = 7.3;
    const CoefficientModel model(reg.drive, reg.source);
    const PropagationResult pr = propagate(model, TruncatedState::vacuum(dim), {0.0, t});
    pr.require_trusted();
    const DysonState d = model.dyson_state(t, aux_at(model, t));
    const FockSpace big(dim + pad);
    const Matrix eta = eta_matrix(d.eps_map(), d.mu(), big, EtaForm::GaussProduct);
    const Matrix inv = eta_matrix(-d.eps_map(), -d.mu(), big, EtaForm::GaussProduct);
    const MetricExpectation m =
        nonhermitian_expectation(eta, inv, pr.states.back().padded(dim + pad).amplitudes, big.number());
    const double de = std::abs(m.metric_side - m.hermitian_side);
    const double dn = std::abs(m.metric_norm - m.hermitian_norm);
    // Norm equality is held to 1e-9, scaled onto this threshold.
    return std::pair{std::max(de, dn * 1e4),
                     "<n> = " + std::to_string(m.hermitian_side.real()) + ", |dnorm| = " + std::to_string(dn)};
  });
}

void fock_propagation_checks(Suite& s) {
  const Regime herm = regimes::hermitian();
  const Regime f1 = regimes::fig1();
  const double chi = f1.source.chi;
  const GridSpec g20{20.0, 200};

  PropagationResult hp;
  s.check("fock.hermitian_resonance", 1e-3, [&] {
    const Trajectory tr = s.run(herm, g20, s.evolve_options());
    std::vector<double> times;
    for (const auto& pt : tr.points) times.push_back(pt.t);
    hp = propagate(CoefficientModel(herm.drive, herm.source), TruncatedState::vacuum(128), times);
    hp.require_trusted();
    double worst = 0.0;
    for (std::size_t k = 1; k < times.size(); ++k)
      worst = std::max(worst, rel(hp.states[k].mean_number(), std::pow(std::sinh(tr.points[k].squeeze.r), 2)));
    return std::pair{worst, std::string("dim 128 <a^dag a> against sinh^2 r, tau in (0, 20]")};
  });
  s.check("fock.second_moment", 1e-3, [&] {
    if (hp.states.empty()) throw Error(Errc::InvalidArgument, "propagation unavailable");
    const OracleSolution o = bogoliubov_ode_oracle(herm.drive, herm.source, g20);
    double worst = 0.0;
    for (std::size_t k = 1; k < o.times.size(); ++k) {
      const cd ref = o.u[k] * std::conj(o.v[k]);
      worst = std::max(worst, std::abs(hp.states[k].moment_a2() - ref) / std::abs(ref));
    }
    return std::pair{worst, std::string("<a^2> against u conj(v) from the mode-mixing oracle")};
  });
  s.check("fock.unitarity", 1e-9, [&] {
    if (hp.states.empty()) throw Error(Errc::InvalidArgument, "propagation unavailable");
    return std::pair{hp.max_norm_defect, std::string("max |norm - 1|, Hermitian resonance, dim 128")};
  });

  // fig1 preset while r <= 2: literal truncation first, then a wider space.
  EvolveOptions e1 = s.evolve_options();
  e1.phi0 = initial_squeeze_phase(f1.drive, chi, 0.0);
  const Trajectory tr = s.run(f1, g20, e1);
  std::vector<double> times;
  for (const auto& pt : tr.points) {
    if (pt.squeeze.r > 2.0) break;
    times.push_back(pt.t);
  }
  for (int dim : {128, 768}) {
    s.check("fock.fig1_oracle_dim" + std::to_string(dim), 1e-3, [&, dim] {
      const PropagationResult pr = propagate(CoefficientModel(f1.drive, f1.source), TruncatedState::vacuum(dim), times);
      double worst = 0.0;
      for (std::size_t k = 1; k < times.size(); ++k)
        worst = std::max(worst, rel(pr.states[k].mean_number(), std::pow(std::sinh(tr.points[k].squeeze.r), 2)));
      std::string detail = "r <= 2 up to tau = " + std::to_string(times.back()) + ", max edge population " +
                           std::to_string(pr.max_edge_population);
      if (!pr.trusted) {
        detail += ", untrusted from tau = " + std::to_string(pr.times[pr.first_untrusted]) +
                  ", relative error " + std::to_string(worst);
        worst = std::max(worst, 1.0);
      }
      return std::pair{worst, detail};
    });
  }
}

}  // namespace

QuasiHermiticityProbe probe_quasi_hermiticity(const Regime& regime, double t, int dim, int pad) {
  const CoefficientModel model(regime.drive, regime.source);
  const double h = 1e-6 * period(regime.drive);
  const std::vector<double> y = aux_at(model, t);
  const std::vector<double> yp = aux_step(model, t, y, h), ym = aux_step(model, t, y, -h);
  const FockSpace big(dim + pad), f(dim);
  const Matrix th = restricted_metric(model.dyson_state(t, y), big, dim);
  const Matrix tp = restricted_metric(model.dyson_state(t + h, yp), big, dim);
  const Matrix tm = restricted_metric(model.dyson_state(t - h, ym), big, dim);
  const Matrix H = dce_hamiltonian(regime.drive, t, f);
  const Matrix id = Matrix::Identity(dim, dim);
  QuasiHermiticityProbe q;
  q.residual = quasi_hermiticity_residual(H, tm, th, tp, h, f.trusted_dim());
  q.negative_control = quasi_hermiticity_residual(H, id, id, id, h, f.trusted_dim());
  return q;
}

bool VerifyReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["level"] = level == VerifyLevel::Fast ? "fast" : "full";
  j["passed"] = all_passed();
  j["seconds"] = seconds;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"passed", c.passed},
                           {"value", c.value},
                           {"threshold", c.threshold},
                           {"detail", c.detail},
                           {"seconds", c.seconds}});
  return j.dump(2);
}

VerifyReport verify(const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Suite s(options);
  drive_checks(s);
  dyson_checks(s);
  fock_algebra_checks(s);
  hermitian_checks(s);
  integrated_checks(s);
  dynamics_checks(s);
  quasi_hermiticity_checks(s);
  if (options.level == VerifyLevel::Full) fock_propagation_checks(s);
  s.check("dynamics.bogoliubov_identity", 1e-9, [&] {
    return std::pair{s.identity_defect(), "normalized |u|^2 - |v|^2 - 1 over " +
                                              std::to_string(s.identity_samples()) + " samples"};
  });

  VerifyReport report;
  report.level = options.level;
  report.checks = s.take();
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace pdce
