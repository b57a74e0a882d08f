#include <cmath>

#include <gtest/gtest.h>

#include "pdce/drive.hpp"
#include "pdce/error.hpp"

using namespace pdce;

TEST(Drive, SignConventions) {
  EXPECT_EQ(sgn(0.0), 1);
  EXPECT_EQ(sgn(-1e-300), -1);
  EXPECT_EQ(heaviside(0.0), 0);
  EXPECT_EQ(heaviside(-2.0), 1);
}

TEST(Drive, OmegaModulation) {
  DriveParams p;
  EXPECT_DOUBLE_EQ(omega(0.0, p), 1.01);
  EXPECT_NEAR(omega(kPi / 2, p), 0.99, 1e-15);
  EXPECT_NEAR(omega_dot(kPi / 4, p), -0.02, 1e-15);
}

TEST(Drive, ApproximateZetaIsQuarterAmplitude) {
  DriveParams p;
  // eps kappa / 4 = 0.005 at the peak of sin(kappa t).
  EXPECT_NEAR(zeta_signed(kPi / 4, p), -0.005, 1e-16);
  EXPECT_NEAR(zeta_signed(3 * kPi / 4, p), 0.005, 1e-16);
  EXPECT_DOUBLE_EQ(zeta_signed(0.0, p), 0.0);
}

TEST(Drive, ExactZetaIsLogDerivativeOverFour) {
  DriveParams p;
  p.zeta_mode = ZetaMode::Exact;
  p.eps_mod = 0.3;
  for (double t : {0.1, 0.7, 2.2}) {
    const double h = 1e-6;
    const double dlog = (std::log(omega(t + h, p)) - std::log(omega(t - h, p))) / (2 * h);
    EXPECT_NEAR(zeta_signed(t, p), dlog / 4, 1e-9);
  }
}

TEST(Drive, PolarPhasesFollowSign) {
  DriveParams p;
  auto wrapped = [](double a) { return std::remainder(a, 2 * kPi); };
  const PolarComplex neg = zeta(kPi / 4, p);
  EXPECT_NEAR(neg.modulus, 0.005, 1e-16);
  EXPECT_NEAR(std::abs(wrapped(neg.phase)), kPi, 1e-15);
  const PolarComplex pos = zeta(3 * kPi / 4, p);
  EXPECT_NEAR(wrapped(pos.phase), 0.0, 1e-15);

  // alpha = -i alpha0 zeta and beta = i beta0 zeta with zeta < 0 here.
  const AlphaBeta ab = alpha_beta(kPi / 4, p);
  EXPECT_NEAR(wrapped(ab.alpha.phase), kPi / 2, 1e-15);
  EXPECT_NEAR(wrapped(ab.beta.phase), -kPi / 2, 1e-15);
  EXPECT_NEAR(ab.alpha.modulus, p.alpha0_tilde * 0.005, 1e-18);
  const AlphaBeta ab2 = alpha_beta(3 * kPi / 4, p);
  EXPECT_NEAR(wrapped(ab2.alpha.phase), -kPi / 2, 1e-15);
  EXPECT_NEAR(wrapped(ab2.beta.phase), kPi / 2, 1e-15);
}

TEST(Drive, AlphaBetaMatchCartesianForm) {
  DriveParams p;
  p.alpha0_tilde = 0.4;
  p.beta0_tilde = 0.9;
  for (int k = 0; k < 50; ++k) {
    const double t = 0.13 * k;
    const AlphaBeta ab = alpha_beta(t, p);
    const double z = zeta_signed(t, p);
    EXPECT_NEAR(std::abs(ab.alpha.value() - std::complex<double>(0, -0.4 * z)), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(ab.beta.value() - std::complex<double>(0, 0.9 * z)), 0.0, 1e-16);
  }
}

TEST(Drive, Validation) {
  DriveParams p;
  EXPECT_NO_THROW(p.validate());
  EXPECT_TRUE(p.on_resonance());
  p.eps_mod = 1.5;
  EXPECT_THROW(p.validate(), ValidationError);
  p = {};
  p.kappa = 0.0;
  EXPECT_THROW(p.validate(), ValidationError);
  p = {};
  p.kappa = 2.1;
  EXPECT_FALSE(p.on_resonance());
}
