#pragma once

#include <complex>

#include <Eigen/Dense>

namespace pdce {

// Normal-ordered factors of exp(eps (2K0) + 2 mu K- + 2 conj(mu) K+):
// exp(lambda K+) Lambda^K0 exp(conj(lambda) K-).
struct GaussCoefficients {
  std::complex<double> lambda;
  double Lambda = 1.0;
  double Xi = 0.0;
  // cosh(Xi) - eps sinh(Xi)/Xi; Lambda = 1/denominator^2. The Fock
  // representation of the product needs denominator > 0.
  double denominator = 1.0;

  double chi() const noexcept { return std::norm(lambda) - Lambda; }
};

GaussCoefficients gauss_coefficients(double eps_map, std::complex<double> mu);

struct PhiChi {
  double Phi;
  double chi;
};

PhiChi phi_from_z(double z_abs, double eps_map);
double epsilon_from_phi(double z_abs, double Phi);

// True when the (z_abs, Phi) pair is reachable by a map with eps_map >= 0.
bool realizable(double z_abs, double Phi) noexcept;

class DysonState {
 public:
  DysonState(double z_abs, double Phi, double varphi);

  static DysonState from_map(double eps_map, std::complex<double> mu);

  double z_abs() const noexcept { return z_abs_; }
  double Phi() const noexcept { return Phi_; }
  double varphi() const noexcept { return varphi_; }
  double chi() const noexcept { return chi_; }
  double Lambda() const noexcept { return Lambda_; }
  double eps_map() const noexcept { return eps_map_; }
  double mu_abs() const noexcept { return 0.5 * eps_map_ * z_abs_; }
  std::complex<double> mu() const noexcept { return std::polar(mu_abs(), varphi_); }
  std::complex<double> lambda() const noexcept { return std::polar(Phi_, -varphi_); }

 private:
  double z_abs_;
  double Phi_;
  double varphi_;
  double chi_;
  double Lambda_;
  double eps_map_;
};

// Mixing matrix M with eta (a, a^dag)^T eta^-1 = M (a, a^dag)^T.
Eigen::Matrix2cd bogoliubov_matrix(const DysonState& d);
Eigen::Matrix2cd bogoliubov_matrix(std::complex<double> lambda, double Lambda);

}  // namespace pdce
