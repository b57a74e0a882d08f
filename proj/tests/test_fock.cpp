#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pdce/dynamics.hpp"
#include "pdce/error.hpp"
#include "pdce/fock.hpp"
#include "pdce/verify.hpp"

using namespace pdce;
using cd = std::complex<double>;

TEST(FockSpace, LadderOperators) {
  const FockSpace f(16);
  for (int n = 1; n < 16; ++n) EXPECT_DOUBLE_EQ(f.a()(n - 1, n).real(), std::sqrt(double(n)));
  EXPECT_EQ((f.adag() - f.a().adjoint()).norm(), 0.0);
  const Matrix comm = f.a() * f.adag() - f.adag() * f.a();
  EXPECT_LT((comm.topLeftCorner(15, 15) - Matrix::Identity(15, 15)).norm(), 1e-14);
  EXPECT_LT((f.number() - f.adag() * f.a()).norm(), 1e-14);
  EXPECT_LT((f.k0() - 0.5 * (f.number() + 0.5 * Matrix::Identity(16, 16))).norm(), 1e-14);
  EXPECT_LT((f.k_plus() - 0.5 * f.adag() * f.adag()).norm(), 1e-14);
  EXPECT_EQ(f.trusted_dim(), 16 - kEdgeBand);
}

TEST(MatrixExponential, Basics) {
  EXPECT_LT((matrix_exponential(Matrix::Zero(5, 5)) - Matrix::Identity(5, 5)).norm(), 1e-15);
  Matrix d = Matrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) d(k, k) = cd(0, 0.7 * k);
  const Matrix e = matrix_exponential(d);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(e(k, k) - std::polar(1.0, 0.7 * k)), 0.0, 1e-15);
}

TEST(MatrixExponential, AntiHermitianGivesUnitary) {
  std::mt19937 rng(2);
  std::normal_distribution<double> g;
  Matrix m(30, 30);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 30; ++j) m(i, j) = cd(g(rng), g(rng));
  const Matrix a = 2.0 * (m - m.adjoint());
  const Matrix u = matrix_exponential(a);
  EXPECT_LT((u.adjoint() * u - Matrix::Identity(30, 30)).norm(), 1e-11);
}

TEST(MatrixExponential, RotationGenerator) {
  Matrix m(2, 2);
  m << 0.0, -3.0, 3.0, 0.0;
  const Matrix e = matrix_exponential(m);
  EXPECT_NEAR(e(0, 0).real(), std::cos(3.0), 1e-14);
  EXPECT_NEAR(e(1, 0).real(), std::sin(3.0), 1e-14);
  EXPECT_THROW(matrix_exponential(Matrix::Identity(3, 3) * 1e4), Error);
}

TEST(EtaMatrix, IdentityMap) {
  const FockSpace f(20);
  for (EtaForm form : {EtaForm::Exponential, EtaForm::GaussProduct})
    EXPECT_LT((eta_matrix(0.0, 0.0, f, form) - Matrix::Identity(20, 20)).norm(), 1e-14);
}

TEST(EtaMatrix, FormsAgreeOnLeadingBlock) {
  const FockSpace f(64);
  for (auto [eps, mu] : {std::pair{0.2, cd(0.05, 0.03)}, std::pair{0.25, cd(-0.06, 0.02)}, std::pair{0.1, cd(0.0, 0.04)}}) {
    const Matrix e = eta_matrix(eps, mu, f, EtaForm::Exponential).topLeftCorner(41, 41);
    const Matrix g = eta_matrix(eps, mu, f, EtaForm::GaussProduct).topLeftCorner(41, 41);
    EXPECT_LT((e - g).norm() / e.norm(), 1e-8);
  }
}

TEST(EtaMatrix, GaussProductNeedsPositiveDenominator) {
  const FockSpace f(64);
  EXPECT_NO_THROW(eta_matrix(2.0, 0.5, f, EtaForm::Exponential));
  try {
    eta_matrix(2.0, 0.5, f, EtaForm::GaussProduct);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OutOfDomain);
  }
}

TEST(Metric, HermitianPositiveDefinite) {
  const FockSpace f(40);
  const Matrix theta = metric(eta_matrix(0.4, cd(0.05, -0.07), f, EtaForm::GaussProduct));
  EXPECT_LT((theta - theta.adjoint()).norm(), 1e-12 * theta.norm());
  const int k = f.trusted_dim();
  Eigen::SelfAdjointEigenSolver<Matrix> es(theta.topLeftCorner(k, k));
  EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  EXPECT_LT((metric(Matrix::Identity(5, 5)) - Matrix::Identity(5, 5)).norm(), 1e-15);
}

TEST(QuasiHermiticity, TrivialMetric) {
  const FockSpace f(30);
  HermitizedCoeffs c{1.1, 0.2, 0.4};
  const Matrix h = hermitian_hamiltonian(c, f);
  const Matrix id = Matrix::Identity(30, 30);
  EXPECT_LT(quasi_hermiticity_residual(h, id, id, id, 1e-6, f.trusted_dim()), 1e-12);
}

TEST(QuasiHermiticity, IntegratedDysonTrajectory) {
  const QuasiHermiticityProbe q = probe_quasi_hermiticity(regimes::regular_integrated(), 3.1, 48, 48);
  EXPECT_LT(q.residual, 1e-5);
  EXPECT_GT(q.negative_control, 1e3 * q.residual);
}

TEST(Propagate, NoDriveKeepsVacuum) {
  Regime g = regimes::hermitian();
  g.drive.eps_mod = 0.0;
  const std::vector<double> times{0.0, 1.0, 5.0};
  const PropagationResult r = propagate(CoefficientModel(g.drive, g.source), TruncatedState::vacuum(24), times);
  for (const auto& s : r.states) EXPECT_LT(s.mean_number(), 1e-20);
}

TEST(Propagate, HermitianResonanceMatchesSqueezeRoute) {
  const Regime g = regimes::hermitian();
  const Trajectory tr = evolve(g.drive, g.source, {20.0, 200});
  std::vector<double> times;
  for (std::size_t k = 0; k < tr.points.size(); k += 50) times.push_back(tr.points[k].t);
  const PropagationResult r = propagate(CoefficientModel(g.drive, g.source), TruncatedState::vacuum(64), times);
  EXPECT_TRUE(r.trusted);
  EXPECT_LT(r.max_norm_defect, 1e-9);
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double n = std::pow(std::sinh(tr.points[50 * k].squeeze.r), 2);
    EXPECT_LT(std::abs(r.states[k].mean_number() - n), 1e-3 * n);
  }
}

TEST(Propagate, TruncationIsFlagged) {
  const Regime g = regimes::fig1();
  const PropagationResult r =
      propagate(CoefficientModel(g.drive, g.source), TruncatedState::vacuum(32), {0.0, 5.0, 10.0});
  EXPECT_FALSE(r.trusted);
  EXPECT_THROW(r.require_trusted(), Error);
  TruncatedState edge = TruncatedState::vacuum(32);
  edge.amplitudes(31) = 1e-3;
  EXPECT_THROW(propagate(CoefficientModel(g.drive, g.source), edge, {0.0, 1.0}), Error);
}

TEST(MetricExpectation, IdentityMapAndSingularInverse) {
  const FockSpace f(20);
  Vector psi = Vector::Zero(20);
  psi(0) = 0.6;
  psi(2) = cd(0.0, 0.8);
  const Matrix id = Matrix::Identity(20, 20);
  const MetricExpectation m = nonhermitian_expectation(id, id, psi, f.number());
  EXPECT_NEAR(std::abs(m.metric_side - m.hermitian_side), 0.0, 1e-14);
  EXPECT_NEAR(m.hermitian_side.real(), 2 * 0.64, 1e-14);
  EXPECT_NEAR(m.metric_norm, 1.0, 1e-14);
  EXPECT_THROW(nonhermitian_expectation(id, 2.0 * id, psi, f.number()), Error);
}

TEST(TruncatedState, Basics) {
  const TruncatedState v = TruncatedState::vacuum(12);
  EXPECT_DOUBLE_EQ(v.norm(), 1.0);
  EXPECT_DOUBLE_EQ(v.edge_population(), 0.0);
  const TruncatedState p = v.padded(30);
  EXPECT_EQ(p.dim(), 30);
  EXPECT_DOUBLE_EQ(p.norm(), 1.0);
}
