#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <random>

#include "ymh/algebra.hpp"
#include "ymh/painleve.hpp"

namespace oracle {

/// One shared r_max = 8, tol = 1e-8 table per test binary.
inline std::shared_ptr<const ymh::TranscendentTable> table() {
  static const auto t = std::make_shared<const ymh::TranscendentTable>(ymh::solve_radial(8.0, 1e-8));
  return t;
}

// psi'' = 2 (r^2 e^psi - e^-psi) - psi'/r
inline std::array<double, 2> rhs(double r, const std::array<double, 2>& y) {
  return {y[1], 2.0 * (r * r * std::exp(y[0]) - std::exp(-y[0])) - y[1] / r};
}

inline std::array<double, 2> rk4_step(double r, const std::array<double, 2>& y, double h) {
  auto add = [](const std::array<double, 2>& a, const std::array<double, 2>& k, double s) {
    return std::array<double, 2>{a[0] + s * k[0], a[1] + s * k[1]};
  };
  const auto k1 = rhs(r, y);
  const auto k2 = rhs(r + h / 2, add(y, k1, h / 2));
  const auto k3 = rhs(r + h / 2, add(y, k2, h / 2));
  const auto k4 = rhs(r + h, add(y, k3, h));
  return {y[0] + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
          y[1] + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
}

/// Fixed-step RK4 from the two-term expansion psi0 - e^{-psi0} r^2 / 2 at
/// r0 = 1e-3. Returns psi + log r at `r_end`, or +-inf once |psi + log r| > 5
/// beyond r = 1.
inline double rk4_eta(double psi0, double r_end, double h = 1.0 / 2048) {
  double r = 1e-3;
  std::array<double, 2> y{psi0 - 0.5 * std::exp(-psi0) * r * r, -std::exp(-psi0) * r};
  while (r < r_end) {
    const double step = std::min(h, r_end - r);
    y = rk4_step(r, y, step);
    r += step;
    const double eta = y[0] + std::log(r);
    if (r > 1.0 && std::fabs(eta) > 5.0) return eta > 0 ? std::numeric_limits<double>::infinity()
                                                        : -std::numeric_limits<double>::infinity();
  }
  return y[0] + std::log(r);
}

/// Bisection on psi0 with the fixed-step integrator above.
inline double rk4_shoot_psi0(double r_max) {
  double lo = -1.0, hi = 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (rk4_eta(mid, r_max) < 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Re-integrate from the origin with the given psi0 up to r (r <= ~3 keeps the
/// growing mode below 1e-8 relative).
inline std::array<double, 2> rk4_psi(double psi0, double r_end, double h = 1.0 / 4096) {
  double r = 1e-3;
  std::array<double, 2> y{psi0 - 0.5 * std::exp(-psi0) * r * r, -std::exp(-psi0) * r};
  while (r < r_end - 1e-15) {
    const double step = std::min(h, r_end - r);
    y = rk4_step(r, y, step);
    r += step;
  }
  return y;
}

/// Distance from (x, y) to the ellipse x^2/a^2 + y^2/b^2 = 1 by dense
/// parametric search followed by golden-section refinement.
inline double ellipse_distance(double a, double b, double x, double y) {
  auto d2 = [&](double t) { return std::pow(a * std::cos(t) - x, 2) + std::pow(b * std::sin(t) - y, 2); };
  constexpr int n = 720;
  int best = 0;
  for (int k = 1; k < n; ++k)
    if (d2(2 * std::numbers::pi * k / n) < d2(2 * std::numbers::pi * best / n)) best = k;
  double lo = 2 * std::numbers::pi * (best - 1) / n, hi = 2 * std::numbers::pi * (best + 1) / n;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 80; ++it) {
    const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
    if (d2(m1) < d2(m2))
      hi = m2;
    else
      lo = m1;
  }
  return std::sqrt(d2(0.5 * (lo + hi)));
}

/// Distance from (x, y) to the line u x + v y = 0.
inline double line_distance(double u, double v, double x, double y) {
  return std::fabs(u * x + v * y) / std::hypot(u, v);
}

inline ymh::ComplexMat2 random_matrix(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto c = [&] { return ymh::cplx{u(rng), u(rng)}; };
  return {c(), c(), c(), c()};
}

inline ymh::ComplexMat2 random_traceless(std::mt19937_64& rng) {
  auto m = random_matrix(rng);
  m.e22 = -m.e11;
  return m;
}

}  // namespace oracle
