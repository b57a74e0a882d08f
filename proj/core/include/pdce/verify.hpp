#pragma once

#include <string>
#include <vector>

#include "pdce/drive.hpp"
#include "pdce/dynamics.hpp"
#include "pdce/hermitian.hpp"

namespace pdce {

struct Regime {
  DriveParams drive;
  DysonSource source;
};

namespace regimes {

// omega0 = 1, eps = alpha0 = 1e-2, beta0 = 1e-3, chi = 1.0002, approximate map.
Regime fig1();
// Same drive with alpha0 = beta0 = 1.
Regime hermitian();
// Integrated constraint route on a trajectory that stays realizable for
// tau <= 50: eps = 0.05, alpha0 = 0.6, beta0 = 0.2, |z| = 0.5, chi = -2.2.
Regime regular_integrated();

}  // namespace regimes

struct QuasiHermiticityProbe {
  double residual = 0.0;
  double negative_control = 0.0;
};

// Residual of H^dag Theta - Theta H - i dTheta/dt at time t, with eta built on
// dim + pad levels before restricting Theta to dim.
QuasiHermiticityProbe probe_quasi_hermiticity(const Regime& regime, double t, int dim, int pad);

enum class VerifyLevel { Fast, Full };
enum class Fault { None, FlipSqueezeGrowth };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Fast;
  Fault fault = Fault::None;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyReport {
  VerifyLevel level = VerifyLevel::Fast;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool all_passed() const noexcept;
  std::string to_json() const;
};

VerifyReport verify(const VerifyOptions& options = {});

}  // namespace pdce
