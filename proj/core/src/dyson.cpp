#include "pdce/dyson.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdce/error.hpp"

namespace pdce {
namespace {

constexpr double kSeriesCut = 1e-6;

double sinhc(double x) {
  if (std::abs(x) < kSeriesCut) return 1.0 + x * x / 6.0;
  return std::sinh(x) / x;
}

double tanhc(double x) {
  if (std::abs(x) < kSeriesCut) return 1.0 - x * x / 3.0;
  return std::tanh(x) / x;
}

double atanhc(double x) {
  if (std::abs(x) < kSeriesCut) return 1.0 + x * x / 3.0;
  return std::atanh(x) / x;
}

}  // namespace

GaussCoefficients gauss_coefficients(double eps_map, std::complex<double> mu) {
  double xi2 = eps_map * eps_map - 4.0 * std::norm(mu);
  if (xi2 < 0.0) {
    if (xi2 < -1e-14 * std::max(1.0, eps_map * eps_map))
      throw Error(Errc::ImaginaryXi, "eps_map^2 - 4|mu|^2 = " + std::to_string(xi2));
    xi2 = 0.0;
  }
  const double xi = std::sqrt(xi2);
  const double q = std::cosh(xi) - eps_map * sinhc(xi);
  if (std::abs(q) < 1e-14) throw Error(Errc::DegenerateDenominator, "cosh(Xi) - eps sinhc(Xi) vanishes");
  GaussCoefficients g;
  g.Xi = xi;
  g.denominator = q;
  g.lambda = 2.0 * std::conj(mu) * sinhc(xi) / q;
  g.Lambda = 1.0 / (q * q);
  return g;
}

PhiChi phi_from_z(double z_abs, double eps_map) {
  if (!(z_abs >= 0.0 && z_abs <= 1.0)) throw Error(Errc::OutOfDomain, "z_abs outside [0,1]");
  if (!(eps_map >= 0.0)) throw Error(Errc::OutOfDomain, "eps_map must be non-negative");
  const double xi = eps_map * std::sqrt(1.0 - z_abs * z_abs);
  const double et = eps_map * tanhc(xi);
  if (std::abs(1.0 - et) < 1e-14) throw Error(Errc::DegenerateDenominator, "eps tanh(Xi)/Xi = 1");
  if (z_abs == 0.0) throw Error(Errc::DivisionByZero, "chi undefined at z_abs = 0");
  const double Phi = z_abs * et / (1.0 - et);
  return {Phi, -2.0 * Phi / z_abs - 1.0};
}

bool realizable(double z_abs, double Phi) noexcept {
  if (!(z_abs > 0.0 && z_abs <= 1.0)) return false;
  if (Phi == 0.0) return true;
  const double s = std::sqrt(1.0 - z_abs * z_abs);
  const double shifted = z_abs + Phi;
  if (shifted == 0.0) return false;
  const double x = s * Phi / shifted;
  return std::abs(x) < 1.0 && Phi / shifted >= 0.0;
}

double epsilon_from_phi(double z_abs, double Phi) {
  if (!(z_abs > 0.0 && z_abs <= 1.0)) throw Error(Errc::OutOfDomain, "z_abs outside (0,1]");
  if (Phi == 0.0) return 0.0;
  if (!realizable(z_abs, Phi))
    throw Error(Errc::OutOfDomain, "(z_abs, Phi) = (" + std::to_string(z_abs) + ", " + std::to_string(Phi) +
                                       ") violates the realizability bound");
  // ln(num/den)/(2s) = atanh(x)/s with x = s Phi/(z+Phi).
  const double s = std::sqrt(1.0 - z_abs * z_abs);
  const double shifted = z_abs + Phi;
  return Phi / shifted * atanhc(s * Phi / shifted);
}

DysonState::DysonState(double z_abs, double Phi, double varphi)
    : z_abs_(z_abs), Phi_(Phi), varphi_(varphi) {
  if (!(z_abs > 0.0 && z_abs <= 1.0)) {
    if (z_abs == 0.0) throw Error(Errc::DivisionByZero, "chi undefined at z_abs = 0");
    throw Error(Errc::OutOfDomain, "z_abs outside (0,1]");
  }
  chi_ = -2.0 * Phi / z_abs - 1.0;
  Lambda_ = Phi * Phi - chi_;
  eps_map_ = epsilon_from_phi(z_abs, Phi);
}

DysonState DysonState::from_map(double eps_map, std::complex<double> mu) {
  if (!(eps_map > 0.0)) throw Error(Errc::OutOfDomain, "eps_map must be positive");
  const double z = 2.0 * std::abs(mu) / eps_map;
  const PhiChi pc = phi_from_z(z, eps_map);
  return DysonState(z, pc.Phi, std::arg(mu));
}

Eigen::Matrix2cd bogoliubov_matrix(std::complex<double> lambda, double Lambda) {
  if (!(Lambda > 0.0)) throw Error(Errc::NonPositiveLambda, "Lambda = " + std::to_string(Lambda));
  const double chi = std::norm(lambda) - Lambda;
  Eigen::Matrix2cd m;
  m << 1.0, -lambda, std::conj(lambda), -chi;
  return m / std::sqrt(Lambda);
}

Eigen::Matrix2cd bogoliubov_matrix(const DysonState& d) {
  if (!(d.Lambda() > 0.0)) throw Error(Errc::NonPositiveLambda, "Lambda = " + std::to_string(d.Lambda()));
  Eigen::Matrix2cd m;
  m << 1.0, -d.lambda(), std::conj(d.lambda()), -d.chi();
  return m / std::sqrt(d.Lambda());
}

}  // namespace pdce
