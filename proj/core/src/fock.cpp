#include "pdce/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdce/dyson.hpp"
#include "pdce/error.hpp"

namespace pdce {
namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};
constexpr double kMaxExpNorm = 1e3;

// exp(c a^dag^2) with exact matrix elements (nilpotent on the truncated space).
Matrix raising_pair_exponential(cd c, int dim) {
  Matrix m = Matrix::Identity(dim, dim);
  for (int n = 0; n < dim; ++n) {
    cd term = 1.0;
    for (int k = 1; n + 2 * k < dim; ++k) {
      const double top = n + 2 * k;
      term *= c / static_cast<double>(k) * std::sqrt(top * (top - 1.0));
      m(n + 2 * k, n) = term;
    }
  }
  return m;
}

}  // namespace

FockSpace::FockSpace(int dim) : dim_(dim) {
  if (dim < 2) throw Error(Errc::InvalidArgument, "Fock dimension must be at least 2");
  a_ = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a_(n - 1, n) = std::sqrt(static_cast<double>(n));
  adag_ = a_.adjoint();
}

Matrix FockSpace::number() const {
  Matrix n = Matrix::Zero(dim_, dim_);
  for (int k = 0; k < dim_; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Matrix FockSpace::k0() const { return 0.5 * (number() + 0.5 * Matrix::Identity(dim_, dim_)); }
Matrix FockSpace::k_plus() const { return 0.5 * adag_ * adag_; }
Matrix FockSpace::k_minus() const { return 0.5 * a_ * a_; }

TruncatedState TruncatedState::vacuum(int dim) {
  TruncatedState s{Vector::Zero(dim)};
  s.amplitudes(0) = 1.0;
  return s;
}

double TruncatedState::edge_population() const noexcept {
  const int n = dim();
  const int band = std::min(kEdgeBand, n);
  return amplitudes.tail(band).squaredNorm();
}

double TruncatedState::mean_number() const noexcept {
  double acc = 0.0;
  for (int n = 0; n < dim(); ++n) acc += n * std::norm(amplitudes(n));
  return acc;
}

std::complex<double> TruncatedState::moment_a2() const noexcept {
  cd acc = 0.0;
  for (int n = 2; n < dim(); ++n)
    acc += std::conj(amplitudes(n - 2)) * std::sqrt(static_cast<double>(n) * (n - 1)) * amplitudes(n);
  return acc;
}

TruncatedState TruncatedState::padded(int d) const {
  if (d < dim()) throw Error(Errc::InvalidArgument, "padding cannot shrink a state");
  TruncatedState s{Vector::Zero(d)};
  s.amplitudes.head(dim()) = amplitudes;
  return s;
}

Matrix matrix_exponential(const Matrix& m) {
  // Higham (2005) scaling and squaring with the [13/13] Pade approximant.
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;
  if (m.rows() != m.cols()) throw Error(Errc::InvalidArgument, "matrix exponential needs a square matrix");
  if (!m.allFinite()) throw Error(Errc::NonFiniteState, "non-finite matrix entries");
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 > kMaxExpNorm) throw Error(Errc::NormTooLarge, "1-norm " + std::to_string(norm1));

  const int s = norm1 > theta13 ? static_cast<int>(std::ceil(std::log2(norm1 / theta13))) : 0;
  const Matrix A = m / std::ldexp(1.0, s);
  const auto n = m.rows();
  const Matrix Id = Matrix::Identity(n, n);
  const Matrix A2 = A * A, A4 = A2 * A2, A6 = A4 * A2;
  const Matrix U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * Id);
  const Matrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * Id;
  Matrix R = (V - U).partialPivLu().solve(V + U);
  for (int k = 0; k < s; ++k) R = R * R;
  return R;
}

Matrix eta_matrix(double eps_map, std::complex<double> mu, const FockSpace& f, EtaForm form) {
  const int d = f.dim();
  if (form == EtaForm::Exponential) {
    Matrix g = eps_map * (f.number() + 0.5 * Matrix::Identity(d, d));
    g += mu * (f.a() * f.a()) + std::conj(mu) * (f.adag() * f.adag());
    return matrix_exponential(g);
  }
  const GaussCoefficients gc = gauss_coefficients(eps_map, mu);
  if (!(gc.denominator > 0.0))
    throw Error(Errc::OutOfDomain, "Gauss product needs cosh(Xi) - eps sinhc(Xi) > 0 in the Fock representation");
  Matrix up = raising_pair_exponential(0.5 * gc.lambda, d);
  const Matrix down = raising_pair_exponential(0.5 * gc.lambda, d).adjoint();
  // Lambda^K0 = Lambda^{(n + 1/2)/2}.
  for (int n = 0; n < d; ++n) up.col(n) *= std::pow(gc.Lambda, 0.5 * (n + 0.5));
  return up * down;
}

Matrix metric(const Matrix& eta) { return eta.adjoint() * eta; }

double quasi_hermiticity_residual(const Matrix& H, const Matrix& theta_minus, const Matrix& theta,
                                  const Matrix& theta_plus, double h, int trusted) {
  const Matrix r = H.adjoint() * theta - theta * H - I * (theta_plus - theta_minus) / (2.0 * h);
  return r.topLeftCorner(trusted, trusted).norm() / theta.topLeftCorner(trusted, trusted).norm();
}

Matrix dce_hamiltonian(const DriveParams& p, double t, const FockSpace& f) {
  const int d = f.dim();
  const double z = zeta_signed(t, p);
  const cd alpha = -I * p.alpha0_tilde * z, beta = I * p.beta0_tilde * z;
  Matrix H = omega(t, p) * (f.number() + 0.5 * Matrix::Identity(d, d));
  H += alpha * (f.a() * f.a()) + beta * (f.adag() * f.adag());
  return H;
}

Matrix hermitian_hamiltonian(const HermitizedCoeffs& c, const FockSpace& f) {
  const int d = f.dim();
  Matrix h = c.W * (f.number() + 0.5 * Matrix::Identity(d, d));
  h += c.T() * (f.a() * f.a()) + std::conj(c.T()) * (f.adag() * f.adag());
  return h;
}

ode::IntegratorOptions default_propagation_options() {
  ode::IntegratorOptions o;
  o.rtol = 1e-11;
  o.atol = 1e-14;
  return o;
}

void PropagationResult::require_trusted() const {
  if (!trusted)
    throw Error(Errc::TruncationUntrusted, "edge population exceeded " + std::to_string(kEdgeTolerance) +
                                               " at t = " + std::to_string(times[first_untrusted]));
}

PropagationResult propagate(const CoefficientModel& model, const TruncatedState& psi0, const std::vector<double>& times,
                            const ode::IntegratorOptions& options) {
  const int d = psi0.dim();
  if (psi0.edge_population() >= kEdgeTolerance)
    throw Error(Errc::TruncationUntrusted, "initial state populates the edge band");
  if (times.size() < 2) throw Error(Errc::InvalidArgument, "propagation grid needs at least two times");
  const std::size_t na = model.aux_dimension();
  const auto nd = static_cast<std::size_t>(d);

  std::vector<double> pair(nd);
  for (std::size_t n = 2; n < nd; ++n) pair[n] = std::sqrt(static_cast<double>(n) * (n - 1.0));

  ode::IvpProblem prob;
  prob.dimension = 2 * nd + na;
  prob.y0.resize(prob.dimension);
  for (std::size_t n = 0; n < nd; ++n) {
    prob.y0[n] = psi0.amplitudes(static_cast<Eigen::Index>(n)).real();
    prob.y0[nd + n] = psi0.amplitudes(static_cast<Eigen::Index>(n)).imag();
  }
  const std::vector<double> aux0 = model.initial_aux();
  std::copy(aux0.begin(), aux0.end(), prob.y0.begin() + static_cast<std::ptrdiff_t>(2 * nd));
  prob.t0 = times.front();
  prob.t1 = times.back();
  prob.output_times = times;
  // h is pentadiagonal; apply it band-wise rather than as a dense matrix.
  prob.rhs = [&](double t, std::span<const double> y, std::span<double> dy) {
    const auto aux = y.subspan(2 * nd);
    const HermitizedCoeffs c = model.coefficients(t, aux);
    const cd T = c.T(), Tc = std::conj(T);
    for (std::size_t n = 0; n < nd; ++n) {
      cd hp = c.W * (n + 0.5) * cd{y[n], y[nd + n]};
      if (n + 2 < nd) hp += T * pair[n + 2] * cd{y[n + 2], y[nd + n + 2]};
      if (n >= 2) hp += Tc * pair[n] * cd{y[n - 2], y[nd + n - 2]};
      const cd dp = -I * hp;
      dy[n] = dp.real();
      dy[nd + n] = dp.imag();
    }
    model.aux_rhs(t, aux, dy.subspan(2 * nd));
  };

  ode::IntegratorOptions o = options;
  if (o.method == ode::Method::Rk45Adaptive && o.step == 0.0) o.step = 2.0 * kPi / model.drive().kappa / 200.0;
  const ode::IvpSolution sol = ode::integrate(prob, o);

  PropagationResult out;
  out.stats = sol.stats;
  out.times = sol.times;
  for (std::size_t k = 0; k < sol.states.size(); ++k) {
    TruncatedState s{Vector(d)};
    for (std::size_t n = 0; n < nd; ++n)
      s.amplitudes(static_cast<Eigen::Index>(n)) = cd{sol.states[k][n], sol.states[k][nd + n]};
    const double edge = s.edge_population();
    out.max_edge_population = std::max(out.max_edge_population, edge);
    if (edge > kEdgeTolerance && out.trusted) {
      out.trusted = false;
      out.first_untrusted = k;
    }
    if (out.trusted) out.max_norm_defect = std::max(out.max_norm_defect, std::abs(s.norm() - 1.0));
    out.states.push_back(std::move(s));
  }
  return out;
}

MetricExpectation nonhermitian_expectation(const Matrix& eta, const Matrix& eta_inverse, const Vector& psi,
                                           const Matrix& o) {
  const auto d = psi.size();
  if (eta.rows() != d || eta_inverse.rows() != d || o.rows() != d)
    throw Error(Errc::InvalidArgument, "operand dimensions differ");
  const Vector Psi = eta_inverse * psi;
  if ((eta * Psi - psi).norm() > 1e-8 * std::max(1.0, psi.norm()))
    throw Error(Errc::SingularEta, "eta eta^-1 does not reproduce the state");
  const Matrix theta = metric(eta);
  const Matrix O = eta_inverse * o * eta;
  MetricExpectation m;
  m.metric_side = Psi.dot(theta * O * Psi);
  m.hermitian_side = psi.dot(o * psi);
  m.metric_norm = Psi.dot(theta * Psi).real();
  m.hermitian_norm = psi.squaredNorm();
  return m;
}

}  // namespace pdce
