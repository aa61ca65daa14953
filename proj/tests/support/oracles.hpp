// Independent reference computations used only by the tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace sis::testing {

/// dI/dt = beta I (N - I) - (mu+gamma) I
inline double sis_rhs(double N, double beta, double m, double x) {
  return beta * x * (N - x) - m * x;
}

inline double rk4_step(const std::function<double(double)>& f, double x, double h) {
  const double k1 = f(x);
  const double k2 = f(x + 0.5 * h * k1);
  const double k3 = f(x + 0.5 * h * k2);
  const double k4 = f(x + h * k3);
  return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

inline double heun_step(const std::function<double(double)>& f, double x, double h) {
  const double k1 = f(x);
  const double k2 = f(x + h * k1);
  return x + 0.5 * h * (k1 + k2);
}

/// Adaptive RK4 with step doubling and local Richardson extrapolation.
inline double adaptive_rk4(const std::function<double(double)>& f, double x0, double t_end,
                           double rel_tol = 1e-13) {
  double t = 0.0, x = x0, h = t_end / 64.0;
  while (t < t_end) {
    if (t + h > t_end) h = t_end - t;
    const double full = rk4_step(f, x, h);
    const double half = rk4_step(f, rk4_step(f, x, 0.5 * h), 0.5 * h);
    const double err = std::abs(half - full) / 15.0;
    const double scale = rel_tol * std::max(std::abs(half), 1e-300);
    if (err <= scale) {
      t += h;
      x = half + (half - full) / 15.0;
      h *= (err == 0.0) ? 2.0 : std::min(2.0, 0.9 * std::pow(scale / err, 0.2));
    } else {
      h *= std::max(0.1, 0.9 * std::pow(scale / err, 0.2));
    }
    if (h < 1e-14 * t_end) throw std::runtime_error("adaptive_rk4: step underflow");
  }
  return x;
}

/// Deterministic SIS reference value at time t.
inline double sis_reference(double N, double beta, double m, double i0, double t) {
  if (t == 0.0) return i0;
  return adaptive_rk4([&](double x) { return sis_rhs(N, beta, m, x); }, i0, t);
}

/// Reference values at t_k = k * t_end / n, k = 0..n, integrated segment by segment.
inline std::vector<double> sis_reference_grid(double N, double beta, double m, double i0, double t_end,
                                              std::size_t n) {
  const auto f = [&](double x) { return sis_rhs(N, beta, m, x); };
  std::vector<double> out{i0};
  double x = i0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double dt = static_cast<double>(k) * t_end / n - static_cast<double>(k - 1) * t_end / n;
    x = adaptive_rk4(f, x, dt);
    out.push_back(x);
  }
  return out;
}

/// Plain bisection of a function with f(lo) > 0 > f(hi) or the reverse.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int i = 0; i < 400 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace sis::testing
