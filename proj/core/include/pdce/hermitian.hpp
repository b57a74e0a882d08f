#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pdce/drive.hpp"
#include "pdce/dyson.hpp"

namespace pdce {

inline constexpr double kDefaultChiGuard = 1e-9;

// Polar drive inputs at one instant. The DCE drive has a real omega.
struct DriveSample {
  double t = 0.0;
  PolarComplex omega;
  PolarComplex alpha;
  PolarComplex beta;

  static DriveSample at(double t, const DriveParams& p);
};

struct GeneralCoeffs {
  std::complex<double> W;
  std::complex<double> T;
  std::complex<double> V;

  // max(|Im W|, |V - conj(T)|): zero when the counterpart is Hermitian.
  double hermiticity_residual() const noexcept;
};

GeneralCoeffs coefficients_general(std::complex<double> lambda, double Lambda, const DriveSample& s,
                                   std::complex<double> lambda_dot, double Lambda_dot);
GeneralCoeffs coefficients_general(const DysonState& d, const DriveSample& s, std::complex<double> lambda_dot,
                                   double Lambda_dot);

struct ConstraintState {
  double z_abs = 1.0;
  double Phi = -1.0001;
  double varphi = kPi / 2;
  double Lambda = 1e-8;

  double chi() const noexcept { return Phi * Phi - Lambda; }
};

struct ConstraintRates {
  double z_abs = 0.0;
  double Phi = 0.0;
  double varphi = 0.0;
  double Lambda = 0.0;

  // d/dt of lambda = Phi e^{-i varphi} along the state.
  std::complex<double> lambda_dot(const ConstraintState& s) const noexcept;
};

ConstraintRates constraint_rhs_general(const ConstraintState& s, const DriveSample& d,
                                       double chi_guard = kDefaultChiGuard);
ConstraintRates constraint_rhs_polar(const ConstraintState& s, const DriveParams& p, double t,
                                     double chi_guard = kDefaultChiGuard);

struct HermitizedCoeffs {
  double W = 0.0;
  double T_abs = 0.0;
  double phi_T = 0.0;

  std::complex<double> T() const noexcept { return std::polar(T_abs, phi_T); }
};

HermitizedCoeffs hermitized_coefficients(const ConstraintState& s, const DriveParams& p, double t,
                                         double chi_guard = kDefaultChiGuard);
HermitizedCoeffs hermitized_coefficients_general(const ConstraintState& s, const DriveSample& d,
                                                 double chi_guard = kDefaultChiGuard);

// Closed-form trajectory near |z| = 1: Phi = -(chi+1)/2, varphi = varphi0 + 2 omega0 t.
DysonState approx_dyson_trajectory(double t, const DriveParams& p, double chi, double varphi0);

enum class DysonRoute { Approximate, Integrated };

struct DysonSource {
  DysonRoute route = DysonRoute::Approximate;
  double chi = 1.0002;
  double varphi0 = kPi / 2;
  // Integrated route only; Phi0 = -z_abs (chi + 1)/2.
  double z_abs = 1.0 - 1e-9;
  double chi_guard = kDefaultChiGuard;

  ConstraintState initial_state() const noexcept;
};

struct CoefficientDiagnostics {
  double hermiticity_residual = 0.0;
  // Lambda integrated against Phi^2 - chi with chi from the monitored |z|.
  double lambda_drift = 0.0;
  // Monitored |z| (integrated rate equation) against the algebraic |z|.
  double z_drift = 0.0;
};

// Supplies h(t) coefficients to the evolution ODEs. The integrated route
// appends [Phi, varphi, Lambda, |z| monitor] to the caller's state vector;
// |z| itself is algebraic, -2 Phi/(chi + 1) with chi = Phi^2 - Lambda.
class CoefficientModel {
 public:
  CoefficientModel(const DriveParams& p, const DysonSource& source);

  const DriveParams& drive() const noexcept { return drive_; }
  const DysonSource& source() const noexcept { return source_; }

  std::size_t aux_dimension() const noexcept;
  std::vector<double> initial_aux() const;
  void aux_rhs(double t, std::span<const double> aux, std::span<double> daux) const;

  ConstraintState constraint_state(double t, std::span<const double> aux) const;
  HermitizedCoeffs coefficients(double t, std::span<const double> aux) const;
  DysonState dyson_state(double t, std::span<const double> aux) const;
  CoefficientDiagnostics diagnostics(double t, std::span<const double> aux) const;

 private:
  void check_chi(double chi) const;
  ConstraintRates rates(double t, const ConstraintState& s) const;

  DriveParams drive_;
  DysonSource source_;
  int initial_chi_side_ = 1;
};

}  // namespace pdce
