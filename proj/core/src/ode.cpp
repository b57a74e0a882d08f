#include "pdce/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdce/error.hpp"

namespace pdce::ode {
namespace {

using Vec = std::vector<double>;

// Dormand-Prince 5(4) tableau and Hairer's dense output weights.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

class Evaluator {
 public:
  Evaluator(const Rhs& rhs, IvpStats& stats) : rhs_(rhs), stats_(stats) {}

  void operator()(double t, const Vec& y, Vec& dydt) {
    rhs_(t, y, dydt);
    ++stats_.rhs_evaluations;
    for (double v : dydt)
      if (!std::isfinite(v)) throw Error(Errc::NonFiniteState, "non-finite derivative at t = " + std::to_string(t));
  }

 private:
  const Rhs& rhs_;
  IvpStats& stats_;
};

void validate(const IvpProblem& p, const IntegratorOptions& o) {
  if (p.dimension == 0 || p.y0.size() != p.dimension)
    throw Error(Errc::InvalidArgument, "state dimension does not match y0");
  if (!p.rhs) throw Error(Errc::InvalidArgument, "missing right-hand side");
  if (!(p.t1 > p.t0)) throw Error(Errc::InvalidArgument, "t1 must exceed t0");
  if (!std::is_sorted(p.output_times.begin(), p.output_times.end()))
    throw Error(Errc::InvalidArgument, "output grid must be sorted");
  if (!p.output_times.empty() && (p.output_times.front() < p.t0 || p.output_times.back() > p.t1))
    throw Error(Errc::InvalidArgument, "output grid outside [t0, t1]");
  if (!(o.rtol > 0.0 && o.atol > 0.0)) throw Error(Errc::InvalidArgument, "rtol and atol must be positive");
  if (o.method == Method::Rk4Fixed && !(o.step > 0.0))
    throw Error(Errc::InvalidArgument, "fixed-step RK4 needs a positive step");
  for (double v : p.y0)
    if (!std::isfinite(v)) throw Error(Errc::NonFiniteState, "non-finite initial state");
}

void axpy_stage(Vec& out, const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    double acc = 0.0;
    for (const auto& [c, k] : terms) acc += c * (*k)[i];
    out[i] = y[i] + h * acc;
  }
}

void rk4_step(Evaluator& f, double t, double h, Vec& y, Vec& k1, Vec& k2, Vec& k3, Vec& k4, Vec& tmp) {
  const std::size_t n = y.size();
  f(t, y, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  f(t + 0.5 * h, tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  f(t + 0.5 * h, tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
  f(t + h, tmp, k4);
  for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

IvpSolution integrate_rk4(const IvpProblem& p, const IntegratorOptions& o) {
  IvpSolution sol;
  Evaluator f(p.rhs, sol.stats);
  const std::size_t n = p.dimension;
  Vec y = p.y0, k1(n), k2(n), k3(n), k4(n), tmp(n);
  double t = p.t0;

  auto advance_to = [&](double target) {
    const double span = target - t;
    if (span <= 0.0) return;
    const auto steps = static_cast<std::size_t>(std::ceil(span / o.step - 1e-9));
    const double h = span / static_cast<double>(steps);
    for (std::size_t s = 0; s < steps; ++s) {
      if (++sol.stats.steps > o.max_steps) throw Error(Errc::StepRejected, "step budget exhausted");
      rk4_step(f, t, h, y, k1, k2, k3, k4, tmp);
      t = (s + 1 == steps) ? target : t + h;
    }
  };

  for (double to : p.output_times) {
    advance_to(to);
    sol.times.push_back(to);
    sol.states.push_back(y);
  }
  return sol;
}

double initial_step(Evaluator& f, const IvpProblem& p, const IntegratorOptions& o, const Vec& y0, const Vec& f0) {
  // Hairer, Norsett & Wanner, starting step heuristic for order 5.
  const std::size_t n = y0.size();
  double d0 = 0.0, d1n = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = o.atol + o.rtol * std::abs(y0[i]);
    d0 = std::max(d0, std::abs(y0[i]) / sc);
    d1n = std::max(d1n, std::abs(f0[i]) / sc);
  }
  double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
  h0 = std::min(h0, p.t1 - p.t0);
  Vec y1(n), f1(n);
  for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
  f(p.t0 + h0, y1, f1);
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = o.atol + o.rtol * std::abs(y0[i]);
    d2 = std::max(d2, std::abs(f1[i] - f0[i]) / sc);
  }
  d2 /= h0;
  const double m = std::max(d1n, d2);
  const double h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 0.2);
  return std::min({100.0 * h0, h1, p.t1 - p.t0});
}

IvpSolution integrate_rk45(const IvpProblem& p, const IntegratorOptions& o) {
  IvpSolution sol;
  Evaluator f(p.rhs, sol.stats);
  const std::size_t n = p.dimension;
  Vec y = p.y0, y1(n), tmp(n), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  Vec r2(n), r3(n), r4(n), r5(n);

  const double span = p.t1 - p.t0;
  const double h_min = 1e-12 * span;
  double t = p.t0;
  f(t, y, k1);
  double h = o.step > 0.0 ? std::min(o.step, span) : initial_step(f, p, o, y, k1);

  std::size_t next_out = 0;
  while (next_out < p.output_times.size() && p.output_times[next_out] <= t) {
    sol.times.push_back(p.output_times[next_out++]);
    sol.states.push_back(y);
  }

  bool last_rejected = false;
  while (t < p.t1 && next_out < p.output_times.size()) {
    if (h < h_min) throw Error(Errc::StepRejected, "step size " + std::to_string(h) + " below h_min at t = " + std::to_string(t));
    if (sol.stats.steps + sol.stats.rejected > o.max_steps) throw Error(Errc::StepRejected, "step budget exhausted");
    bool final_step = false;
    if (t + h >= p.t1 || p.t1 - (t + h) < h_min) {
      h = p.t1 - t;
      final_step = true;
    }

    axpy_stage(tmp, y, h, {{a21, &k1}});
    f(t + c2 * h, tmp, k2);
    axpy_stage(tmp, y, h, {{a31, &k1}, {a32, &k2}});
    f(t + c3 * h, tmp, k3);
    axpy_stage(tmp, y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    f(t + c4 * h, tmp, k4);
    axpy_stage(tmp, y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    f(t + c5 * h, tmp, k5);
    axpy_stage(tmp, y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    const double t_new = final_step ? p.t1 : t + h;
    f(t_new, tmp, k6);
    axpy_stage(y1, y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    f(t_new, y1, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = o.atol + o.rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (!std::isfinite(err)) throw Error(Errc::NonFiniteState, "non-finite error estimate");

    if (err > 1.0) {
      ++sol.stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      last_rejected = true;
      continue;
    }

    ++sol.stats.steps;
    sol.stats.max_error_estimate = std::max(sol.stats.max_error_estimate, err);

    if (next_out < p.output_times.size() && p.output_times[next_out] <= t_new) {
      for (std::size_t i = 0; i < n; ++i) {
        const double ydiff = y1[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        r2[i] = ydiff;
        r3[i] = bspl;
        r4[i] = ydiff - h * k7[i] - bspl;
        r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      while (next_out < p.output_times.size() && p.output_times[next_out] <= t_new) {
        const double to = p.output_times[next_out++];
        sol.times.push_back(to);
        if (to == t_new) {
          sol.states.push_back(y1);
          continue;
        }
        const double th = (to - t) / h;
        const double th1 = 1.0 - th;
        Vec out(n);
        for (std::size_t i = 0; i < n; ++i)
          out[i] = y[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
        sol.states.push_back(std::move(out));
      }
    }

    t = t_new;
    y.swap(y1);
    k1.swap(k7);
    double fac = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
    if (last_rejected) fac = std::min(fac, 1.0);
    last_rejected = false;
    h *= fac;
  }
  return sol;
}

}  // namespace

IvpSolution integrate(const IvpProblem& problem, const IntegratorOptions& options) {
  validate(problem, options);
  if (options.method == Method::Rk4Fixed) return integrate_rk4(problem, options);
  return integrate_rk45(problem, options);
}

}  // namespace pdce::ode
