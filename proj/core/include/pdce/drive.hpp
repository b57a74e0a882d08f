#pragma once

#include <complex>

namespace pdce {

inline constexpr double kPi = 3.14159265358979323846;

enum class ZetaMode { Exact, Approximate };

struct DriveParams {
  double omega0 = 1.0;
  double eps_mod = 0.01;
  double kappa = 2.0;
  double alpha0_tilde = 0.01;
  double beta0_tilde = 1e-3;
  ZetaMode zeta_mode = ZetaMode::Approximate;

  // Throws ValidationError naming the first violated invariant.
  void validate() const;
  bool on_resonance() const noexcept;
};

struct PolarComplex {
  double modulus = 0.0;
  double phase = 0.0;

  std::complex<double> value() const noexcept { return std::polar(modulus, phase); }
};

// 1 for x < 0, else 0.
constexpr int heaviside(double x) noexcept { return x < 0.0 ? 1 : 0; }
// +1 for x >= 0, else -1.
constexpr int sgn(double x) noexcept { return x < 0.0 ? -1 : 1; }

double omega(double t, const DriveParams& p) noexcept;
double omega_dot(double t, const DriveParams& p) noexcept;

// Real signed parametric strength; negative where sin(kappa t) > 0.
double zeta_signed(double t, const DriveParams& p) noexcept;
PolarComplex zeta(double t, const DriveParams& p) noexcept;

struct AlphaBeta {
  PolarComplex alpha;
  PolarComplex beta;
};

AlphaBeta alpha_beta(double t, const DriveParams& p) noexcept;

}  // namespace pdce
