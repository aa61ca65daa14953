#include "sis/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sis/error.hpp"

namespace sis {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxExponent = 709.0;

struct Simpson {
  const SisParams& p;
  double rel_tol;
  bool overflow = false;

  double f(double y) {
    const double v = scale_density(p, y);
    if (std::isinf(v)) overflow = true;
    return v;
  }

  double recurse(double a, double b, double fa, double fm, double fb, double whole, int depth) {
    if (overflow) return kInf;
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double sum = left + right;
    const double err = sum - whole;
    // Local relative criterion: every accepted piece is accurate relative to
    // itself, so the total is accurate relative to the total (theta > 0).
    if (depth >= 60 || (depth >= 6 && std::abs(err) <= 15.0 * rel_tol * std::abs(sum))) {
      return sum + err / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, depth + 1) + recurse(m, b, fm, frm, fb, right, depth + 1);
  }
};

bool doubling(const SisParams& p, double y) {
  const double near = std::abs(scale_function(p, y));
  const double far = std::abs(scale_function(p, 2.0 * y));
  if (std::isinf(far)) return true;
  return far >= 2.0 * near;
}

}  // namespace

double lyapunov_estimate(const Trajectory& traj, double burn_in_fraction) {
  if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "burn_in_fraction must lie in [0, 1)");
  }
  const std::size_t n = traj.grid.n_cells();
  const auto burn = static_cast<std::size_t>(std::floor(burn_in_fraction * static_cast<double>(n)));
  if (!traj.has_log_states()) {
    for (double s : traj.states) {
      if (!(s > 0.0)) throw Error(ErrorCode::NonPositiveState, "trajectory has a state <= 0");
    }
  }
  return (traj.log_state(n) - traj.log_state(burn)) / (traj.grid.knot(n) - traj.grid.knot(burn));
}

ScaleSpec scale_spec(const SisParams& p) {
  if (p.sigma() == 0.0) throw Error(ErrorCode::SigmaZero, "scale function needs sigma > 0");
  const double s2n2 = p.sigma() * p.sigma() * p.N() * p.N();
  const double delta = derived_constants(p).delta;
  return {-2.0 * delta / s2n2, 2.0 * p.mu_plus_gamma() / s2n2};
}

double log_scale_density(const SisParams& p, double y) {
  const auto spec = scale_spec(p);
  return spec.linear_coef * y + spec.exp_coef * std::expm1(y);
}

double scale_density(const SisParams& p, double y) {
  const double e = log_scale_density(p, y);
  if (e > kMaxExponent) return kInf;
  return std::exp(e);
}

double scale_function(const SisParams& p, double x, double rel_tol) {
  scale_spec(p);
  if (x == 0.0) return 0.0;
  const double a = std::min(0.0, x);
  const double b = std::max(0.0, x);
  Simpson s{p, rel_tol};
  const double fa = s.f(a);
  const double fb = s.f(b);
  const double fm = s.f(0.5 * (a + b));
  double value = kInf;
  if (!s.overflow) {
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    value = s.recurse(a, b, fa, fm, fb, whole, 0);
    if (s.overflow || std::isinf(value)) value = kInf;
  }
  return x < 0.0 ? -value : value;
}

const char* to_string(Recurrence r) noexcept {
  return r == Recurrence::RecurrentOnInterior ? "RecurrentOnInterior" : "TransientTowardZero";
}

RecurrenceVerdict recurrence_classify(const SisParams& p) {
  scale_spec(p);
  const bool recurrent = derived_constants(p).delta >= 0.0;
  RecurrenceVerdict out;
  out.verdict = recurrent ? Recurrence::RecurrentOnInterior : Recurrence::TransientTowardZero;
  out.psi_left_diverges = doubling(p, -20.0) && doubling(p, -40.0);
  out.psi_right_diverges = doubling(p, 5.0) && doubling(p, 10.0);
  out.numeric_agrees = out.psi_right_diverges && (out.psi_left_diverges == recurrent);
  return out;
}

std::size_t crossing_count(std::span<const double> states, double low, double high) {
  if (!(low > 0.0 && low < high)) throw Error(ErrorCode::BadBand, "need 0 < low < high");
  std::size_t count = 0;
  bool armed = false;
  for (double s : states) {
    if (s < low) {
      armed = true;
    } else if (armed && s > high) {
      ++count;
      armed = false;
    }
  }
  return count;
}

std::size_t crossing_count(const Trajectory& traj, double low, double high) {
  return crossing_count(traj.states, low, high);
}

namespace {

std::span<const double> trailing_window(std::span<const double> states, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "window_fraction must lie in ]0, 1]");
  }
  const auto len = static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(states.size())));
  if (len < 101) throw Error(ErrorCode::WindowTooShort, "trailing window has fewer than 100 steps");
  return states.subspan(states.size() - len);
}

}  // namespace

bool brackets(std::span<const double> states, double xi, double window_fraction) {
  const auto window = trailing_window(states, window_fraction);
  const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
  return *lo < xi && xi < *hi;
}

BracketReport persistence_bracket(std::span<const Trajectory> trajs, double xi,
                                  double window_fraction) {
  BracketReport report;
  for (const auto& tr : trajs) {
    const bool ok = brackets(tr.states, xi, window_fraction);
    report.per_trajectory.push_back(ok);
    ++report.trajectories;
    if (ok) ++report.bracketing;
  }
  if (report.trajectories > 0) {
    report.fraction = static_cast<double>(report.bracketing) / static_cast<double>(report.trajectories);
  }
  return report;
}

}  // namespace sis
