#pragma once

#include <complex>

#include <Eigen/Dense>

// Two-dimensional non-unitary representation of su(1,1):
// K0 = diag(1/2, -1/2), K+ = [[0, 1], [0, 0]], K- = [[0, 0], [-1, 0]].
// A quadratic a K0 + b K- + c K+ maps to [[a/2, c], [-b, -a/2]].
namespace su11 {

using cd = std::complex<double>;
using M2 = Eigen::Matrix2cd;

inline M2 k0() { return (M2() << 0.5, 0.0, 0.0, -0.5).finished(); }
inline M2 kp() { return (M2() << 0.0, 1.0, 0.0, 0.0).finished(); }
inline M2 km() { return (M2() << 0.0, 0.0, -1.0, 0.0).finished(); }

// w (n + 1/2) + t a^2 + v a^dag^2 = 2w K0 + 2t K- + 2v K+.
inline M2 quadratic(cd w, cd t, cd v) { return 2.0 * w * k0() + 2.0 * t * km() + 2.0 * v * kp(); }

struct Quadratic {
  cd w, t, v;
};

inline Quadratic coefficients(const M2& m) { return {m(0, 0), -0.5 * m(1, 0), 0.5 * m(0, 1)}; }

// exp(G) for traceless G: G^2 = s I, exp(G) = cosh(sqrt s) + sinh(sqrt s)/sqrt(s) G.
inline M2 expm(const M2& g) {
  const cd s2 = (g * g)(0, 0);
  const cd s = std::sqrt(s2);
  const cd c = std::cosh(s);
  const cd sh = std::abs(s) < 1e-8 ? 1.0 + s2 / 6.0 : std::sinh(s) / s;
  return c * M2::Identity() + sh * g;
}

// Dyson map exp(eps (n + 1/2) + mu a^2 + conj(mu) a^dag^2).
inline M2 eta(double eps, cd mu) { return expm(quadratic(eps, mu, std::conj(mu))); }

// exp(lambda K+) Lambda^K0 exp(conj(lambda) K-).
inline M2 gauss(cd lambda, double Lambda) {
  M2 l = M2::Identity() + lambda * kp();
  M2 d = (M2() << std::sqrt(Lambda), 0.0, 0.0, 1.0 / std::sqrt(Lambda)).finished();
  M2 r = M2::Identity() + std::conj(lambda) * km();
  return l * d * r;
}

}  // namespace su11
