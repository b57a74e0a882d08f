#include "pdce/drive.hpp"

#include <algorithm>
#include <cmath>

#include "pdce/error.hpp"

namespace pdce {

void DriveParams::validate() const {
  if (!(std::isfinite(omega0) && omega0 > 0.0)) throw ValidationError("omega0 > 0", "got " + std::to_string(omega0));
  if (!(std::isfinite(kappa) && kappa > 0.0)) throw ValidationError("kappa > 0", "got " + std::to_string(kappa));
  if (!(eps_mod >= 0.0 && eps_mod < 1.0)) throw ValidationError("0 <= eps_mod < 1", "got " + std::to_string(eps_mod));
  if (!(alpha0_tilde >= 0.0 && alpha0_tilde <= 1.0))
    throw ValidationError("alpha0_tilde in [0,1]", "got " + std::to_string(alpha0_tilde));
  if (!(beta0_tilde >= 0.0 && beta0_tilde <= 1.0))
    throw ValidationError("beta0_tilde in [0,1]", "got " + std::to_string(beta0_tilde));
}

bool DriveParams::on_resonance() const noexcept {
  return std::abs(kappa - 2.0 * omega0) <= 1e-12 * std::max(1.0, kappa);
}

double omega(double t, const DriveParams& p) noexcept {
  return p.omega0 * (1.0 + p.eps_mod * std::cos(p.kappa * t));
}

double omega_dot(double t, const DriveParams& p) noexcept {
  return -p.omega0 * p.eps_mod * p.kappa * std::sin(p.kappa * t);
}

double zeta_signed(double t, const DriveParams& p) noexcept {
  if (p.zeta_mode == ZetaMode::Exact) return omega_dot(t, p) / (4.0 * omega(t, p));
  return -0.25 * p.eps_mod * p.kappa * std::sin(p.kappa * t);
}

PolarComplex zeta(double t, const DriveParams& p) noexcept {
  const double s = std::sin(p.kappa * t);
  return {std::abs(zeta_signed(t, p)), kPi + heaviside(s) * kPi};
}

AlphaBeta alpha_beta(double t, const DriveParams& p) noexcept {
  const double z = std::abs(zeta_signed(t, p));
  const double h = heaviside(std::sin(p.kappa * t)) * kPi;
  return {{p.alpha0_tilde * z, h + kPi / 2}, {p.beta0_tilde * z, h - kPi / 2}};
}

}  // namespace pdce
