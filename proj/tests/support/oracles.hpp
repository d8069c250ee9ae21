#pragma once

// Independent numerical oracles. None of these call into the solver paths
// they are used to check.

#include <cmath>
#include <functional>
#include <vector>

#include "milnor/polynomial.hpp"

namespace milnor::testing {

// Classic RK4 for x' = (w_1 x_1, ..., w_m x_m) from s = 0 to s = t.
inline std::vector<double> rk4_euler_flow(std::vector<double> x, const std::vector<double>& w, double t, int steps) {
  const double h = t / steps;
  auto rhs = [&](const std::vector<double>& p) {
    std::vector<double> d(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) d[i] = w[i] * p[i];
    return d;
  };
  auto axpy = [](const std::vector<double>& a, const std::vector<double>& b, double s) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
    return out;
  };
  for (int k = 0; k < steps; ++k) {
    const auto k1 = rhs(x);
    const auto k2 = rhs(axpy(x, k1, h / 2));
    const auto k3 = rhs(axpy(x, k2, h / 2));
    const auto k4 = rhs(axpy(x, k3, h));
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return x;
}

// Central differences of f/|f| with f evaluated straight from P and Q.
inline std::vector<std::vector<double>> fd_projection_jacobian(const MapGerm& g, std::vector<double> x,
                                                               double h = 1e-6) {
  auto unit = [&](const std::vector<double>& p) {
    const double a = g.P().evaluate(p), b = g.Q().evaluate(p);
    const double n = std::hypot(a, b);
    return std::pair{a / n, b / n};
  };
  std::vector<std::vector<double>> jac(2, std::vector<double>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double keep = x[i];
    x[i] = keep + h;
    const auto plus = unit(x);
    x[i] = keep - h;
    const auto minus = unit(x);
    x[i] = keep;
    jac[0][i] = (plus.first - minus.first) / (2 * h);
    jac[1][i] = (plus.second - minus.second) / (2 * h);
  }
  return jac;
}

// Root of a continuous f on [lo, hi] with a sign change, by plain bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// The four polar angles in (0, pi) where sin(t) cos^2(t) = r, for
// 0 < r < 2 / (3 sqrt 3).
inline std::vector<double> ex2_critical_angles(double r) {
  const double peak = std::asin(1.0 / std::sqrt(3.0));
  const double pi = std::acos(-1.0);
  auto g = [r](double t) { return std::sin(t) * std::cos(t) * std::cos(t) - r; };
  return {bisect(g, 0.0, peak), bisect(g, peak, pi / 2), bisect(g, pi / 2, pi - peak), bisect(g, pi - peak, pi)};
}

}  // namespace milnor::testing
