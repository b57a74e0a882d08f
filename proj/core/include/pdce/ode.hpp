#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pdce::ode {

using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

enum class Method { Rk4Fixed, Rk45Adaptive };

struct IvpProblem {
  std::size_t dimension = 0;
  Rhs rhs;
  double t0 = 0.0;
  double t1 = 0.0;
  std::vector<double> y0;
  // Sorted, inside [t0, t1]. States are reported exactly at these times.
  std::vector<double> output_times;
};

struct IntegratorOptions {
  Method method = Method::Rk45Adaptive;
  double rtol = 1e-9;
  double atol = 1e-12;
  // Rk4Fixed: the step (required). Rk45Adaptive: initial step, 0 picks one.
  double step = 0.0;
  std::size_t max_steps = 50'000'000;
};

struct IvpStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
  // Largest accepted scaled error (<= 1 by construction for Rk45Adaptive).
  double max_error_estimate = 0.0;
};

struct IvpSolution {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  IvpStats stats;
};

IvpSolution integrate(const IvpProblem& problem, const IntegratorOptions& options = {});

}  // namespace pdce::ode
