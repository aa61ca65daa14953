#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sis/params.hpp"
#include "sis/trajectory.hpp"

namespace sis {

/// Empirical exponential rate (ln I(t_last) - ln I(t_burn)) / (t_last - t_burn),
/// with t_burn the knot at floor(burn_in_fraction * n_cells). Uses log_states
/// when the trajectory has them; otherwise every state must be > 0
/// (NonPositiveState).
double lyapunov_estimate(const Trajectory& traj, double burn_in_fraction = 0.0);

/// Coefficients of the scale density of the log-odds process
///   dJ = (beta N - (mu+gamma) - (mu+gamma) e^J) dt + sigma N dB:
///   theta(y) = exp(linear_coef * y + exp_coef * (e^y - 1)).
struct ScaleSpec {
  double linear_coef;  // -2 (beta N - (mu+gamma)) / (sigma^2 N^2)
  double exp_coef;     //  2 (mu+gamma) / (sigma^2 N^2)
};

/// Throws SigmaZero.
ScaleSpec scale_spec(const SisParams& p);

/// ln theta(y); finite for every finite y.
double log_scale_density(const SisParams& p, double y);

/// theta(y), or +infinity once the exponent passes 709 (overflow is the
/// divergence evidence the recurrence test looks for, not an error).
double scale_density(const SisParams& p, double y);

/// psi(x) = ∫_0^x theta(y) dy by adaptive Simpson to relative tolerance
/// `rel_tol`; negative for x < 0, and +-infinity if theta overflows on the way.
double scale_function(const SisParams& p, double x, double rel_tol = 1e-8);

enum class Recurrence { RecurrentOnInterior, TransientTowardZero };
const char* to_string(Recurrence r) noexcept;

struct RecurrenceVerdict {
  Recurrence verdict;
  bool psi_left_diverges;   // |psi(-2Y)| >= 2 |psi(-Y)| at Y = 20 and 40
  bool psi_right_diverges;  // |psi(2Y)|  >= 2 |psi(Y)|  at Y = 5 and 10
  bool numeric_agrees;      // flags match the analytic rule
};

/// Verdict from the sign of delta = beta N - (mu+gamma): recurrent on ]0,N[
/// iff delta >= 0. The doubling tests are reported alongside as a finite
/// numerical witness. Throws SigmaZero.
RecurrenceVerdict recurrence_classify(const SisParams& p);

/// Completed upcrossings from below `low` to above `high`. Throws BadBand
/// unless 0 < low < high.
std::size_t crossing_count(std::span<const double> states, double low, double high);
std::size_t crossing_count(const Trajectory& traj, double low, double high);

struct BracketReport {
  std::size_t trajectories = 0;
  std::size_t bracketing = 0;
  double fraction = 0.0;
  std::vector<bool> per_trajectory;
};

/// For each trajectory, checks min < xi < max over the trailing
/// `window_fraction` of its knots. Throws WindowTooShort if that window has
/// fewer than 100 steps.
BracketReport persistence_bracket(std::span<const Trajectory> trajs, double xi,
                                  double window_fraction = 0.5);

/// Single-trajectory form used by the ensemble runner.
bool brackets(std::span<const double> states, double xi, double window_fraction = 0.5);

}  // namespace sis
