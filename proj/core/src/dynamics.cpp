#include "pdce/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdce/error.hpp"

namespace pdce {
namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

double drive_period(const DriveParams& p) { return 2.0 * kPi / p.kappa; }

ode::IntegratorOptions with_initial_step(ode::IntegratorOptions o, const DriveParams& p) {
  if (o.method == ode::Method::Rk45Adaptive && o.step == 0.0) o.step = drive_period(p) / 200.0;
  return o;
}

}  // namespace

SqueezeRates squeeze_rhs(const SqueezeState& s, const HermitizedCoeffs& c) noexcept {
  const double x = c.phi_T + s.phi;
  return {-2.0 * c.T_abs * std::sin(x), -2.0 * c.W - 4.0 * c.T_abs / std::tanh(2.0 * s.r) * std::cos(x)};
}

RotationRates rotation_displacement_rhs(const SqueezeState& s, const HermitizedCoeffs& c) noexcept {
  const double Omega = c.W + 2.0 * c.T_abs * std::tanh(s.r) * std::cos(c.phi_T + s.phi);
  return {-I * Omega * s.theta, Omega};
}

BogoliubovTriple bogoliubov_uvw(const SqueezeState& s0, const SqueezeState& s) noexcept {
  const double c0 = std::cosh(s0.r), sh0 = std::sinh(s0.r);
  const double c = std::cosh(s.r), sh = std::sinh(s.r);
  const double Om = s.Omega_tilde;
  BogoliubovTriple b;
  b.u = std::polar(c0 * c, -Om) - std::polar(sh0 * sh, Om + s.phi - s0.phi);
  b.v = std::polar(c0 * sh, Om + s.phi) - std::polar(sh0 * c, -(Om - s0.phi));
  b.w = s0.theta * std::polar(c, -Om) + std::conj(s0.theta) * std::polar(sh, Om + s.phi);
  return b;
}

double mean_photon_general(const InitialMoments& m, const BogoliubovTriple& b) {
  if (!(m.n >= 0.0)) throw Error(Errc::InvalidArgument, "<a^dag a> must be non-negative");
  const cd u = b.u, v = b.v, w = b.w;
  const cd cross = u * std::conj(v) * m.a2 + v * std::conj(u) * std::conj(m.a2) +
                   (w * std::conj(v) + u * std::conj(w)) * m.a1 + (w * std::conj(u) + v * std::conj(w)) * std::conj(m.a1);
  const double N = std::norm(v) + std::norm(w) + (std::norm(u) + std::norm(v)) * m.n + cross.real();
  if (N < -1e-9) throw Error(Errc::NegativeMeanPhoton, "mean photon number " + std::to_string(N));
  return N;
}

double amplification_factor(double alpha0_tilde, double beta0_tilde, double chi, double chi_guard) {
  if (std::abs(chi - 1.0) <= chi_guard) throw Error(Errc::ChiSingular, "|chi - 1| below guard");
  return std::abs((alpha0_tilde - chi * beta0_tilde) / (chi - 1.0));
}

double initial_squeeze_phase(const DriveParams& p, double chi, double phi0_prime) noexcept {
  return phi0_prime - 1.5 * kPi - heaviside(p.alpha0_tilde - chi * p.beta0_tilde) * kPi;
}

AnalyticSqueeze analytic_squeeze(double t, const DriveParams& p, double chi, double r0, double phi0_prime,
                                 SqueezeForm form) {
  if (!p.on_resonance()) throw Error(Errc::NotOnResonance, "kappa != 2 omega0");
  const double R = amplification_factor(p.alpha0_tilde, p.beta0_tilde, chi);
  const double x = 4.0 * p.omega0 * t;
  AnalyticSqueeze a;
  if (form == SqueezeForm::LongTime) {
    a.r = r0 + R * p.eps_mod * std::cos(phi0_prime) * p.omega0 * t / 2.0;
  } else {
    a.r = r0 + p.eps_mod / 8.0 * R *
                   (std::cos(phi0_prime) * (x - std::sin(x)) - std::sin(phi0_prime) * (1.0 - std::cos(x)));
  }
  a.phi = initial_squeeze_phase(p, chi, phi0_prime) - 2.0 * p.omega0 * t;
  return a;
}

std::vector<double> GridSpec::times(const DriveParams& p) const {
  if (!(tau_max > 0.0)) throw ValidationError("tau_max > 0", "got " + std::to_string(tau_max));
  if (points_per_period < 200)
    throw ValidationError("points_per_period >= 200", "got " + std::to_string(points_per_period));
  const double t_max = tau_max / p.omega0;
  const auto n = static_cast<std::size_t>(std::ceil(t_max * points_per_period / drive_period(p) - 1e-9));
  std::vector<double> out(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out[k] = t_max * static_cast<double>(k) / static_cast<double>(n);
  out.back() = t_max;
  return out;
}

Trajectory evolve(const DriveParams& p, const DysonSource& source, const GridSpec& grid,
                  const EvolveOptions& options) {
  const CoefficientModel model(p, source);
  const SqueezeRhsFn sq = options.squeeze ? options.squeeze : SqueezeRhsFn(squeeze_rhs);
  const std::size_t na = model.aux_dimension();
  constexpr std::size_t nsq = 5;  // r, phi, Re theta, Im theta, Omega_tilde

  if (!(options.r0 >= 0.0)) throw ValidationError("r0 >= 0", "got " + std::to_string(options.r0));
  if (!(options.r_seed > 0.0)) throw ValidationError("r_seed > 0", "got " + std::to_string(options.r_seed));

  SqueezeState s0{options.r0, options.phi0, options.theta0, 0.0};
  const bool vacuum = options.r0 == 0.0 && options.theta0 == 0.0 && options.moments.is_vacuum();

  ode::IvpProblem prob;
  prob.dimension = nsq + na;
  prob.y0 = {options.r0 == 0.0 ? options.r_seed : options.r0, options.phi0, options.theta0.real(),
             options.theta0.imag(), 0.0};
  const std::vector<double> aux0 = model.initial_aux();
  prob.y0.insert(prob.y0.end(), aux0.begin(), aux0.end());
  prob.output_times = grid.times(p);
  prob.t0 = 0.0;
  prob.t1 = prob.output_times.back();
  prob.rhs = [&](double t, std::span<const double> y, std::span<double> dy) {
    const auto aux = y.subspan(nsq);
    const HermitizedCoeffs c = model.coefficients(t, aux);
    const SqueezeState s{y[0], y[1], {y[2], y[3]}, y[4]};
    const SqueezeRates sr = sq(s, c);
    const RotationRates rr = rotation_displacement_rhs(s, c);
    dy[0] = sr.r;
    dy[1] = sr.phi;
    dy[2] = rr.theta.real();
    dy[3] = rr.theta.imag();
    dy[4] = rr.Omega;
    model.aux_rhs(t, aux, dy.subspan(nsq));
  };

  const ode::IvpSolution sol = ode::integrate(prob, with_initial_step(options.integrator, p));

  Trajectory traj;
  traj.stats = sol.stats;
  traj.points.reserve(sol.times.size());
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    const double t = sol.times[k];
    const std::vector<double>& y = sol.states[k];
    const std::span<const double> aux(y.data() + nsq, na);
    const SqueezeState s{y[0], y[1], {y[2], y[3]}, y[4]};
    const ConstraintState cs = model.constraint_state(t, aux);
    const CoefficientDiagnostics diag = model.diagnostics(t, aux);
    const BogoliubovTriple b = bogoliubov_uvw(s0, s);
    const double N = vacuum ? std::pow(std::sinh(s.r), 2) : mean_photon_general(options.moments, b);
    traj.points.push_back({t, DysonState(cs.z_abs, cs.Phi, cs.varphi), cs, model.coefficients(t, aux), s, b, N,
                           diag.hermiticity_residual});
    traj.max_identity_defect = std::max(traj.max_identity_defect, std::abs(b.identity_defect()));
    traj.max_hermiticity_residual = std::max(traj.max_hermiticity_residual, diag.hermiticity_residual);
    traj.max_lambda_drift = std::max(traj.max_lambda_drift, diag.lambda_drift);
    traj.max_z_drift = std::max(traj.max_z_drift, diag.z_drift);
  }
  return traj;
}

ode::IntegratorOptions default_oracle_options() {
  ode::IntegratorOptions o;
  o.rtol = 1e-11;
  o.atol = 1e-13;
  return o;
}

OracleSolution bogoliubov_ode_oracle(const DriveParams& p, const DysonSource& source, const GridSpec& grid,
                                     const ode::IntegratorOptions& options) {
  const CoefficientModel model(p, source);
  const std::size_t na = model.aux_dimension();
  constexpr std::size_t nuv = 4;

  ode::IvpProblem prob;
  prob.dimension = nuv + na;
  prob.y0 = {1.0, 0.0, 0.0, 0.0};
  const std::vector<double> aux0 = model.initial_aux();
  prob.y0.insert(prob.y0.end(), aux0.begin(), aux0.end());
  prob.output_times = grid.times(p);
  prob.t0 = 0.0;
  prob.t1 = prob.output_times.back();
  prob.rhs = [&](double t, std::span<const double> y, std::span<double> dy) {
    const auto aux = y.subspan(nuv);
    const HermitizedCoeffs c = model.coefficients(t, aux);
    const cd u{y[0], y[1]}, v{y[2], y[3]};
    const cd T = c.T();
    const cd du = -I * (c.W * u + 2.0 * std::conj(T) * v);
    const cd dv = I * (c.W * v + 2.0 * T * u);
    dy[0] = du.real();
    dy[1] = du.imag();
    dy[2] = dv.real();
    dy[3] = dv.imag();
    model.aux_rhs(t, aux, dy.subspan(nuv));
  };

  const ode::IvpSolution sol = ode::integrate(prob, with_initial_step(options, p));
  OracleSolution out;
  out.stats = sol.stats;
  out.times = sol.times;
  for (const auto& y : sol.states) {
    const cd u{y[0], y[1]}, v{y[2], y[3]};
    out.u.push_back(u);
    out.v.push_back(v);
    out.photons.push_back(std::norm(v));
    out.max_identity_defect = std::max(out.max_identity_defect, std::abs(std::norm(u) - std::norm(v) - 1.0));
  }
  return out;
}

}  // namespace pdce
