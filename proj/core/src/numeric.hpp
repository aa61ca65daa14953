#pragma once

// Internal numerical kernels shared by the closed-form evaluators.

#include <cmath>
#include <limits>

namespace sis::detail {

inline double log_add_exp(double a, double b) noexcept {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

inline double log_add_exp(double a, double b, double c) noexcept {
  return log_add_exp(log_add_exp(a, b), c);
}

/// (e^x - 1)/x, with a three-term series below |x| = 1e-8.
inline double phi1(double x) noexcept {
  if (std::abs(x) < 1e-8) return 1.0 + x * (0.5 + x / 6.0);
  return std::expm1(x) / x;
}

/// ln((e^x - 1)/x), finite for any finite x.
inline double log_phi1(double x) noexcept {
  if (x > 30.0) return x + std::log1p(-std::exp(-x)) - std::log(x);
  return std::log(phi1(x));
}

/// ln of the weight ∫_0^1 e^{x s} (1 - s) ds = (e^x - 1 - x)/x^2.
inline double log_weight_left(double x) noexcept {
  const double ax = std::abs(x);
  if (ax < 1e-2) {
    const double s = 1.0 / 2 + x * (1.0 / 6 + x * (1.0 / 24 + x * (1.0 / 120 + x * (1.0 / 720 + x / 5040))));
    return std::log(s);
  }
  if (x > 50.0) return x + std::log1p(-(1.0 + x) * std::exp(-x)) - 2.0 * std::log(x);
  return std::log((std::expm1(x) - x) / (x * x));
}

/// ln of the weight ∫_0^1 e^{x s} s ds = (e^x (x - 1) + 1)/x^2.
inline double log_weight_right(double x) noexcept {
  const double ax = std::abs(x);
  if (ax < 1e-2) {
    const double s = 1.0 / 2 + x * (1.0 / 3 + x * (1.0 / 8 + x * (1.0 / 30 + x * (1.0 / 144 + x / 840))));
    return std::log(s);
  }
  if (x > 50.0) return x + std::log(x - 1.0 + std::exp(-x)) - 2.0 * std::log(x);
  return std::log((x * std::exp(x) - std::expm1(x)) / (x * x));
}

}  // namespace sis::detail
