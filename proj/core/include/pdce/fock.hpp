#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pdce/drive.hpp"
#include "pdce/hermitian.hpp"
#include "pdce/ode.hpp"

namespace pdce {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Comparisons exclude this many top Fock levels.
inline constexpr int kEdgeBand = 10;
inline constexpr double kEdgeTolerance = 1e-12;

class FockSpace {
 public:
  explicit FockSpace(int dim = 128);

  int dim() const noexcept { return dim_; }
  int trusted_dim() const noexcept { return dim_ - kEdgeBand; }
  const Matrix& a() const noexcept { return a_; }
  const Matrix& adag() const noexcept { return adag_; }
  Matrix number() const;
  Matrix k0() const;
  Matrix k_plus() const;
  Matrix k_minus() const;

 private:
  int dim_;
  Matrix a_;
  Matrix adag_;
};

struct TruncatedState {
  Vector amplitudes;

  static TruncatedState vacuum(int dim);

  int dim() const noexcept { return static_cast<int>(amplitudes.size()); }
  double norm() const noexcept { return amplitudes.norm(); }
  double edge_population() const noexcept;
  double mean_number() const noexcept;
  std::complex<double> moment_a2() const noexcept;
  // Zero-extended copy in a larger space.
  TruncatedState padded(int dim) const;
};

Matrix matrix_exponential(const Matrix& m);

enum class EtaForm { Exponential, GaussProduct };

// exp(eps (a^dag a + 1/2) + mu a^2 + conj(mu) a^dag^2) on the truncated space.
Matrix eta_matrix(double eps_map, std::complex<double> mu, const FockSpace& f, EtaForm form);
Matrix metric(const Matrix& eta);

// ||H^dag Theta - Theta H - i dTheta/dt||_F / ||Theta||_F on the leading
// trusted x trusted block, with a central difference of step h.
double quasi_hermiticity_residual(const Matrix& H, const Matrix& theta_minus, const Matrix& theta,
                                  const Matrix& theta_plus, double h, int trusted);

// omega (n + 1/2) + alpha a^2 + beta a^dag^2 with the drive's alpha, beta.
Matrix dce_hamiltonian(const DriveParams& p, double t, const FockSpace& f);
Matrix hermitian_hamiltonian(const HermitizedCoeffs& c, const FockSpace& f);

ode::IntegratorOptions default_propagation_options();

struct PropagationResult {
  std::vector<double> times;
  std::vector<TruncatedState> states;
  // False once any reported state has edge population above kEdgeTolerance.
  bool trusted = true;
  std::size_t first_untrusted = 0;
  double max_edge_population = 0.0;
  // Largest |norm - 1| over trusted states.
  double max_norm_defect = 0.0;
  ode::IvpStats stats;

  // Throws TruncationUntrusted when the result is flagged.
  void require_trusted() const;
};

// Schroedinger equation for the Hermitian counterpart h(t) of the model.
PropagationResult propagate(const CoefficientModel& model, const TruncatedState& psi0, const std::vector<double>& times,
                            const ode::IntegratorOptions& options = default_propagation_options());

struct MetricExpectation {
  std::complex<double> metric_side;     // <Psi| Theta O |Psi>, O = eta^-1 o eta
  std::complex<double> hermitian_side;  // <psi| o |psi>
  double metric_norm = 0.0;             // <Psi| Theta |Psi>
  double hermitian_norm = 0.0;          // <psi|psi>
};

// Builds |Psi> = eta^-1 |psi> and evaluates both sides of the metric
// expectation identity. All operands share one (padded) dimension.
MetricExpectation nonhermitian_expectation(const Matrix& eta, const Matrix& eta_inverse, const Vector& psi,
                                           const Matrix& o);

}  // namespace pdce
