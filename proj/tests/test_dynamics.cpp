#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pdce/dynamics.hpp"
#include "pdce/error.hpp"
#include "pdce/verify.hpp"

using namespace pdce;
using cd = std::complex<double>;

TEST(Amplification, UnitForHermitianDrive) {
  for (double chi : {-5.0, -1.0, 0.0, 0.3, 1.0002, 7.0}) EXPECT_DOUBLE_EQ(amplification_factor(1.0, 1.0, chi), 1.0);
}

TEST(Amplification, Fig1PresetValue) {
  EXPECT_NEAR(amplification_factor(0.01, 1e-3, 1.0002), 44.999, 1e-3);
  EXPECT_THROW(amplification_factor(0.01, 1e-3, 1.0), Error);
}

TEST(BogoliubovTriple, IdentityHoldsForAnySqueezeState) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> ur(0.0, 3.0), up(-10.0, 10.0);
  for (int k = 0; k < 500; ++k) {
    const SqueezeState s0{ur(rng), up(rng), {up(rng), up(rng)}, 0.0};
    const SqueezeState s{ur(rng), up(rng), {}, up(rng)};
    const BogoliubovTriple b = bogoliubov_uvw(s0, s);
    const double scale = std::norm(b.u) + std::norm(b.v);
    EXPECT_LT(std::abs(b.identity_defect()), 1e-12 * scale);
  }
}

TEST(BogoliubovTriple, IdentityMapAtStart) {
  const SqueezeState s0{0.7, 0.3, {0.2, -0.1}, 0.0};
  const BogoliubovTriple b = bogoliubov_uvw(s0, s0);
  EXPECT_NEAR(std::abs(b.u - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(b.v), 0.0, 1e-14);
}

TEST(MeanPhoton, VacuumAndCoherentStates) {
  const BogoliubovTriple b{std::polar(std::cosh(0.8), 0.4), std::polar(std::sinh(0.8), -1.1), {0.3, 0.2}};
  EXPECT_NEAR(mean_photon_general({}, b), std::norm(b.v) + std::norm(b.w), 1e-14);

  // a(t) = u a + v a^dag + w on a coherent state |alpha>.
  const cd alpha{0.6, -0.9};
  const InitialMoments m{std::norm(alpha), alpha * alpha, alpha};
  const double expected = std::norm(b.u * alpha + b.v * std::conj(alpha) + b.w) + std::norm(b.v);
  EXPECT_NEAR(mean_photon_general(m, b), expected, 1e-12);

  EXPECT_THROW(mean_photon_general({-1.0, {}, {}}, b), Error);
}

TEST(GridSpec, ResolutionAndBounds) {
  const DriveParams p;
  const std::vector<double> t = GridSpec{50.0, 200}.times(p);
  EXPECT_DOUBLE_EQ(t.front(), 0.0);
  EXPECT_DOUBLE_EQ(t.back(), 50.0);
  EXPECT_LE(t[1] - t[0], kPi / 200 + 1e-15);
  EXPECT_THROW((GridSpec{50.0, 199}.times(p)), ValidationError);
  EXPECT_THROW((GridSpec{0.0, 200}.times(p)), ValidationError);
}

TEST(AnalyticSqueeze, StartsAtInitialValueAndGrowsLinearly) {
  const DriveParams p;
  const double chi = 1.0002;
  EXPECT_DOUBLE_EQ(analytic_squeeze(0.0, p, chi, 0.25, 0.0).r, 0.25);
  const double R = amplification_factor(p.alpha0_tilde, p.beta0_tilde, chi);
  const double t = 37.0;
  EXPECT_NEAR(analytic_squeeze(t, p, chi, 0.0, 0.0, SqueezeForm::LongTime).r, R * p.eps_mod * t / 2, 1e-14);
  // The oscillatory form differs by a bounded ripple.
  const double ripple = std::abs(analytic_squeeze(t, p, chi, 0.0, 0.0).r -
                                 analytic_squeeze(t, p, chi, 0.0, 0.0, SqueezeForm::LongTime).r);
  EXPECT_LE(ripple, p.eps_mod * R / 8 + 1e-14);
}

TEST(AnalyticSqueeze, PhaseRotatesAtTwiceTheFrequency) {
  const DriveParams p;
  const AnalyticSqueeze a = analytic_squeeze(0.0, p, 1.0002, 0.0, 0.0);
  const AnalyticSqueeze b = analytic_squeeze(1.5, p, 1.0002, 0.0, 0.0);
  EXPECT_NEAR(b.phi - a.phi, -3.0, 1e-14);
  EXPECT_DOUBLE_EQ(a.phi, initial_squeeze_phase(p, 1.0002, 0.0));
}

TEST(AnalyticSqueeze, OffResonanceRejected) {
  DriveParams p;
  p.kappa = 2.2;
  EXPECT_THROW(analytic_squeeze(1.0, p, 1.0002, 0.0, 0.0), Error);
}

TEST(Evolve, HermitianBaseline) {
  const Regime g = regimes::hermitian();
  const Trajectory tr = evolve(g.drive, g.source, {100.0, 200});
  const TrajectoryPoint& end = tr.points.back();
  EXPECT_NEAR(end.squeeze.r, 0.5, 0.01);
  EXPECT_NEAR(end.photons, std::pow(std::sinh(end.squeeze.r), 2), 1e-14);
  EXPECT_LT(tr.max_identity_defect, 1e-9 * std::cosh(2 * end.squeeze.r));
}

TEST(Evolve, OracleAgreesWithSqueezeRoute) {
  const Regime g = regimes::fig1();
  EvolveOptions o;
  o.phi0 = initial_squeeze_phase(g.drive, g.source.chi, 0.0);
  const GridSpec grid{10.0, 200};
  const Trajectory tr = evolve(g.drive, g.source, grid, o);
  const OracleSolution orc = bogoliubov_ode_oracle(g.drive, g.source, grid);
  ASSERT_EQ(orc.times.size(), tr.points.size());
  EXPECT_LT(orc.max_identity_defect, 1e-9 * (1.0 + orc.photons.back()));
  for (std::size_t k = 1; k < orc.times.size(); ++k) {
    const double a = tr.points[k].photons, b = orc.photons[k];
    EXPECT_LT(std::abs(a - b), 1e-4 * std::max(a, b)) << "t = " << orc.times[k];
  }
}

TEST(Evolve, IntegratedRouteStaysHermitian) {
  const Regime g = regimes::regular_integrated();
  const Trajectory tr = evolve(g.drive, g.source, {50.0, 200});
  EXPECT_LT(tr.max_hermiticity_residual, 1e-7);
  EXPECT_LT(tr.max_lambda_drift, 1e-6);
  EXPECT_LT(tr.max_z_drift, 1e-6);
  for (const auto& pt : tr.points) EXPECT_LT(pt.constraint.z_abs, 1.0);
}

TEST(Evolve, IntegratedRouteHitsChiSingularityAtFig1Point) {
  Regime g = regimes::fig1();
  g.source.route = DysonRoute::Integrated;
  try {
    evolve(g.drive, g.source, {50.0, 200});
    FAIL() << "expected ChiSingular";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ChiSingular);
  }
}

TEST(Evolve, SqueezeOverrideIsUsed) {
  const Regime g = regimes::hermitian();
  EvolveOptions o;
  o.squeeze = [](const SqueezeState&, const HermitizedCoeffs&) { return SqueezeRates{0.0, 0.0}; };
  const Trajectory tr = evolve(g.drive, g.source, {5.0, 200}, o);
  EXPECT_DOUBLE_EQ(tr.points.back().squeeze.r, o.r_seed);
}

TEST(Evolve, SeedIndependence) {
  const Regime g = regimes::fig1();
  EvolveOptions a, b;
  a.phi0 = b.phi0 = initial_squeeze_phase(g.drive, g.source.chi, 0.0);
  b.r_seed = 1e-10;
  const double ra = evolve(g.drive, g.source, {20.0, 200}, a).points.back().squeeze.r;
  const double rb = evolve(g.drive, g.source, {20.0, 200}, b).points.back().squeeze.r;
  EXPECT_NEAR(ra, rb, 1e-6 * ra);
}
