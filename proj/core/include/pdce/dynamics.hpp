#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "pdce/drive.hpp"
#include "pdce/dyson.hpp"
#include "pdce/hermitian.hpp"
#include "pdce/ode.hpp"

namespace pdce {

struct SqueezeState {
  double r = 0.0;
  double phi = 0.0;
  std::complex<double> theta;
  double Omega_tilde = 0.0;
};

struct SqueezeRates {
  double r = 0.0;
  double phi = 0.0;
};

struct RotationRates {
  std::complex<double> theta;
  double Omega = 0.0;
};

SqueezeRates squeeze_rhs(const SqueezeState& s, const HermitizedCoeffs& c) noexcept;
RotationRates rotation_displacement_rhs(const SqueezeState& s, const HermitizedCoeffs& c) noexcept;

struct BogoliubovTriple {
  std::complex<double> u;
  std::complex<double> v;
  std::complex<double> w;

  // |u|^2 - |v|^2 - 1.
  double identity_defect() const noexcept { return std::norm(u) - std::norm(v) - 1.0; }
};

BogoliubovTriple bogoliubov_uvw(const SqueezeState& s0, const SqueezeState& s) noexcept;

struct InitialMoments {
  double n = 0.0;                  // <a^dag a>
  std::complex<double> a2;         // <a^2>
  std::complex<double> a1;         // <a>

  bool is_vacuum() const noexcept { return n == 0.0 && a2 == 0.0 && a1 == 0.0; }
};

double mean_photon_general(const InitialMoments& m, const BogoliubovTriple& b);

double amplification_factor(double alpha0_tilde, double beta0_tilde, double chi, double chi_guard = kDefaultChiGuard);

enum class SqueezeForm { Oscillatory, LongTime };

struct AnalyticSqueeze {
  double r = 0.0;
  double phi = 0.0;
};

AnalyticSqueeze analytic_squeeze(double t, const DriveParams& p, double chi, double r0, double phi0_prime,
                                 SqueezeForm form = SqueezeForm::Oscillatory);

// Squeeze phase at t = 0 implied by phi0_prime in the closed-form solution.
double initial_squeeze_phase(const DriveParams& p, double chi, double phi0_prime) noexcept;

struct GridSpec {
  double tau_max = 50.0;
  int points_per_period = 200;

  // Uniform grid on [0, tau_max/omega0] with spacing <= period/points_per_period.
  std::vector<double> times(const DriveParams& p) const;
};

using SqueezeRhsFn = std::function<SqueezeRates(const SqueezeState&, const HermitizedCoeffs&)>;

struct EvolveOptions {
  double r0 = 0.0;
  double phi0 = -1.5 * kPi;
  std::complex<double> theta0;
  InitialMoments moments;
  // Replaces r0 = 0 to keep coth(2r) finite.
  double r_seed = 1e-8;
  ode::IntegratorOptions integrator;
  // Defaults to squeeze_rhs; fault-injection hook for negative controls.
  SqueezeRhsFn squeeze = nullptr;
};

struct TrajectoryPoint {
  double t = 0.0;
  DysonState dyson;
  ConstraintState constraint;
  HermitizedCoeffs coeffs;
  SqueezeState squeeze;
  BogoliubovTriple uvw;
  double photons = 0.0;
  double hermiticity_residual = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  ode::IvpStats stats;
  double max_identity_defect = 0.0;
  double max_hermiticity_residual = 0.0;
  double max_lambda_drift = 0.0;
  double max_z_drift = 0.0;
};

Trajectory evolve(const DriveParams& p, const DysonSource& source, const GridSpec& grid,
                  const EvolveOptions& options = {});

struct OracleSolution {
  std::vector<double> times;
  std::vector<std::complex<double>> u;
  std::vector<std::complex<double>> v;
  std::vector<double> photons;
  double max_identity_defect = 0.0;
  ode::IvpStats stats;
};

ode::IntegratorOptions default_oracle_options();

// Linear mode-mixing equations of h(t) from (u, v) = (1, 0); |v|^2 is N(t).
OracleSolution bogoliubov_ode_oracle(const DriveParams& p, const DysonSource& source, const GridSpec& grid,
                                     const ode::IntegratorOptions& options = default_oracle_options());

}  // namespace pdce
