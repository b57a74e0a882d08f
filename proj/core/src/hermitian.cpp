#include "pdce/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdce/error.hpp"

namespace pdce {
namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

void guard(double chi, double Phi, double chi_guard) {
  if (std::abs(chi - 1.0) < chi_guard) throw Error(Errc::ChiSingular, "|chi - 1| = " + std::to_string(std::abs(chi - 1.0)));
  if (std::abs(Phi) < 1e-12) throw Error(Errc::PhiZero, "|Phi| below 1e-12");
}

}  // namespace

DriveSample DriveSample::at(double t, const DriveParams& p) {
  const AlphaBeta ab = alpha_beta(t, p);
  return {t, {pdce::omega(t, p), 0.0}, ab.alpha, ab.beta};
}

double GeneralCoeffs::hermiticity_residual() const noexcept {
  return std::max(std::abs(W.imag()), std::abs(V - std::conj(T)));
}

GeneralCoeffs coefficients_general(cd l, double L, const DriveSample& s, cd ld, double Ld) {
  if (L == 0.0) throw Error(Errc::ZeroLambda, "Lambda = 0");
  const cd om = s.omega.value(), al = s.alpha.value(), be = s.beta.value();
  const double ch = std::norm(l) - L;
  const cd lc = std::conj(l), ldc = std::conj(ld);
  GeneralCoeffs c;
  c.W = -(om * (std::norm(l) + ch) + 2.0 * (al * l + be * lc * ch) + I * (l * ldc - 0.5 * Ld)) / L;
  c.T = (om * lc + al + be * lc * lc + 0.5 * I * ldc) / L;
  c.V = (om * l * ch + al * l * l + be * ch * ch + 0.5 * I * (ld * L - Ld * l + ldc * l * l)) / L;
  return c;
}

GeneralCoeffs coefficients_general(const DysonState& d, const DriveSample& s, cd ld, double Ld) {
  return coefficients_general(d.lambda(), d.Lambda(), s, ld, Ld);
}

std::complex<double> ConstraintRates::lambda_dot(const ConstraintState& s) const noexcept {
  return (Phi - I * s.Phi * varphi) * std::polar(1.0, -s.varphi);
}

ConstraintRates constraint_rhs_general(const ConstraintState& s, const DriveSample& d, double chi_guard) {
  const double chi = s.chi(), Phi = s.Phi, P2 = Phi * Phi, z = s.z_abs, vp = s.varphi;
  guard(chi, Phi, chi_guard);
  const double wa = d.omega.modulus, pw = d.omega.phase;
  const double aa = d.alpha.modulus, pa = d.alpha.phase;
  const double ba = d.beta.modulus, pb = d.beta.phase;
  const double ws = wa * std::sin(pw);
  const double sa = aa * std::sin(vp - pa), sb = ba * std::sin(vp + pb);

  ConstraintRates r;
  r.Phi = 2.0 / (chi - 1.0) * ((1.0 - P2) * (Phi * ws - sa) - ((2.0 * chi - 1.0) * P2 - chi * chi) * sb);
  r.z_abs = -z * z * ((P2 + chi) / Phi * ws - 2.0 * (sa - chi * sb)) + z / Phi * r.Phi;
  r.varphi = 2.0 * wa * std::cos(pw) + 2.0 / ((1.0 - chi) * Phi) *
                                           (aa * (1.0 - P2) * std::cos(vp - pa) + ba * (P2 - chi * chi) * std::cos(vp + pb));
  r.Lambda = -2.0 * s.Lambda *
             ((1.0 + 2.0 * P2 / (chi - 1.0)) * ws - 2.0 * Phi / (chi - 1.0) * (sa - (2.0 * chi - 1.0) * sb));
  return r;
}

ConstraintRates constraint_rhs_polar(const ConstraintState& s, const DriveParams& p, double t, double chi_guard) {
  const double chi = s.chi(), Phi = s.Phi, P2 = Phi * Phi, z = s.z_abs;
  guard(chi, Phi, chi_guard);
  const double zeta = zeta_signed(t, p);
  const double a0 = p.alpha0_tilde, b0 = p.beta0_tilde;
  const double c = std::cos(s.varphi), sn = std::sin(s.varphi);

  ConstraintRates r;
  r.Phi = 2.0 * zeta / (1.0 - chi) * (a0 * (1.0 - P2) + b0 * ((2.0 * chi - 1.0) * P2 - chi * chi)) * c;
  r.z_abs = 2.0 * zeta * z * z * (a0 - b0 * chi) * c + z / Phi * r.Phi;
  r.varphi = 2.0 * omega(t, p) - 2.0 * zeta / ((1.0 - chi) * Phi) * (a0 * (1.0 - P2) + b0 * (P2 - chi * chi)) * sn;
  r.Lambda = 4.0 * zeta * Phi * (P2 - chi) / (chi - 1.0) * (a0 - b0 * (2.0 * chi - 1.0)) * c;
  return r;
}

HermitizedCoeffs hermitized_coefficients(const ConstraintState& s, const DriveParams& p, double t, double chi_guard) {
  const double chi = s.chi();
  if (std::abs(chi - 1.0) < chi_guard) throw Error(Errc::ChiSingular, "|chi - 1| below guard");
  const double zeta = zeta_signed(t, p);
  const double a0 = p.alpha0_tilde, b0 = p.beta0_tilde;
  HermitizedCoeffs h;
  h.W = omega(t, p) - 2.0 * zeta * s.Phi / (chi - 1.0) * (a0 - b0) * std::sin(s.varphi);
  h.T_abs = std::abs(zeta * (a0 - b0 * chi) / (1.0 - chi));
  h.phi_T = (heaviside(std::sin(p.kappa * t)) + heaviside(1.0 - chi) + heaviside(a0 - chi * b0)) * kPi + kPi / 2;
  return h;
}

HermitizedCoeffs hermitized_coefficients_general(const ConstraintState& s, const DriveSample& d, double chi_guard) {
  const double chi = s.chi(), Phi = s.Phi, vp = s.varphi;
  if (std::abs(chi - 1.0) < chi_guard) throw Error(Errc::ChiSingular, "|chi - 1| below guard");
  const double wa = d.omega.modulus, pw = d.omega.phase;
  const double aa = d.alpha.modulus, pa = d.alpha.phase;
  const double ba = d.beta.modulus, pb = d.beta.phase;
  const double ws = wa * std::sin(pw);

  HermitizedCoeffs h;
  h.W = wa * std::cos(pw) + 2.0 * Phi / (chi - 1.0) * (aa * std::cos(vp - pa) - ba * std::cos(vp + pb));
  const double rad = aa * aa + ba * ba * chi * chi - 2.0 * aa * ba * chi * std::cos(pa + pb) +
                     Phi * ws * (Phi * ws - 2.0 * aa * std::sin(vp - pa) + 2.0 * ba * chi * std::sin(vp + pb));
  h.T_abs = std::sqrt(std::max(0.0, rad)) / std::abs(1.0 - chi);
  const double num = ws * Phi * std::cos(vp) + aa * std::sin(pa) + ba * chi * std::sin(pb);
  const double den = ws * Phi * std::sin(vp) - aa * std::cos(pa) + ba * chi * std::cos(pb);
  const double s1 = sgn(1.0 - chi);
  h.phi_T = std::atan2(s1 * num, -s1 * den);
  return h;
}

DysonState approx_dyson_trajectory(double t, const DriveParams& p, double chi, double varphi0) {
  return DysonState(1.0, -0.5 * (chi + 1.0), varphi0 + 2.0 * p.omega0 * t);
}

ConstraintState DysonSource::initial_state() const noexcept {
  const double Phi = -0.5 * z_abs * (chi + 1.0);
  return {z_abs, Phi, varphi0, Phi * Phi - chi};
}

CoefficientModel::CoefficientModel(const DriveParams& p, const DysonSource& source) : drive_(p), source_(source) {
  p.validate();
  if (!(source.chi_guard > 0.0)) throw ValidationError("chi_guard > 0", "got " + std::to_string(source.chi_guard));
  if (std::abs(source.chi - 1.0) < source.chi_guard)
    throw Error(Errc::ChiSingular, "configured chi within guard of 1");
  initial_chi_side_ = sgn(source.chi - 1.0);
  if (source.route == DysonRoute::Integrated) {
    const ConstraintState s = source.initial_state();
    if (!(s.Lambda > 0.0))
      throw ValidationError("Lambda = Phi^2 - chi > 0", "initial (z_abs, chi) = (" + std::to_string(source.z_abs) +
                                                            ", " + std::to_string(source.chi) + ") is not realizable");
    DysonState(s.z_abs, s.Phi, s.varphi);
  }
}

std::size_t CoefficientModel::aux_dimension() const noexcept {
  return source_.route == DysonRoute::Integrated ? 4 : 0;
}

std::vector<double> CoefficientModel::initial_aux() const {
  if (source_.route == DysonRoute::Approximate) return {};
  const ConstraintState s = source_.initial_state();
  return {s.Phi, s.varphi, s.Lambda, s.z_abs};
}

void CoefficientModel::check_chi(double chi) const {
  if (std::abs(chi - 1.0) < source_.chi_guard || sgn(chi - 1.0) != initial_chi_side_)
    throw Error(Errc::ChiSingular, "integrated chi reached 1 (chi = " + std::to_string(chi) + ")");
}

ConstraintState CoefficientModel::constraint_state(double t, std::span<const double> aux) const {
  if (source_.route == DysonRoute::Approximate) {
    const double Phi = -0.5 * (source_.chi + 1.0);
    return {1.0, Phi, source_.varphi0 + 2.0 * drive_.omega0 * t, Phi * Phi - source_.chi};
  }
  const double Phi = aux[0], Lambda = aux[2];
  const double chi = Phi * Phi - Lambda;
  check_chi(chi);
  if (!(Lambda > 0.0)) throw Error(Errc::NonPositiveLambda, "integrated Lambda = " + std::to_string(Lambda));
  return {-2.0 * Phi / (chi + 1.0), Phi, aux[1], Lambda};
}

ConstraintRates CoefficientModel::rates(double t, const ConstraintState& s) const {
  if (source_.route == DysonRoute::Approximate) {
    ConstraintRates r;
    r.varphi = 2.0 * drive_.omega0;
    return r;
  }
  return constraint_rhs_polar(s, drive_, t, source_.chi_guard);
}

void CoefficientModel::aux_rhs(double t, std::span<const double> aux, std::span<double> daux) const {
  if (source_.route == DysonRoute::Approximate) return;
  const ConstraintState s = constraint_state(t, aux);
  const ConstraintRates r = constraint_rhs_polar(s, drive_, t, source_.chi_guard);
  daux[0] = r.Phi;
  daux[1] = r.varphi;
  daux[2] = r.Lambda;
  ConstraintState monitored = s;
  monitored.z_abs = aux[3];
  daux[3] = constraint_rhs_polar(monitored, drive_, t, source_.chi_guard).z_abs;
}

HermitizedCoeffs CoefficientModel::coefficients(double t, std::span<const double> aux) const {
  return hermitized_coefficients(constraint_state(t, aux), drive_, t, source_.chi_guard);
}

DysonState CoefficientModel::dyson_state(double t, std::span<const double> aux) const {
  const ConstraintState s = constraint_state(t, aux);
  return DysonState(s.z_abs, s.Phi, s.varphi);
}

CoefficientDiagnostics CoefficientModel::diagnostics(double t, std::span<const double> aux) const {
  const ConstraintState s = constraint_state(t, aux);
  const ConstraintRates r = rates(t, s);
  const DysonState d(s.z_abs, s.Phi, s.varphi);
  CoefficientDiagnostics out;
  out.hermiticity_residual =
      coefficients_general(d, DriveSample::at(t, drive_), r.lambda_dot(s), r.Lambda).hermiticity_residual();
  if (source_.route == DysonRoute::Integrated) {
    const double chi_monitored = -2.0 * s.Phi / aux[3] - 1.0;
    out.lambda_drift = std::abs(s.Lambda - (s.Phi * s.Phi - chi_monitored));
    out.z_drift = std::abs(aux[3] - s.z_abs);
  }
  return out;
}

}  // namespace pdce
