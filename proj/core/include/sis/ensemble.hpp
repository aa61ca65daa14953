#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <optional>
#include <vector>

#include "sis/config.hpp"
#include "sis/trajectory.hpp"

namespace sis {

struct Quantiles {
  double q05, q25, q50, q75, q95;
};

/// Linear-interpolation quantile (numpy's default) of unsorted data.
/// Throws OutOfRange for empty data.
double quantile(std::vector<double> data, double q);
Quantiles quantiles(const std::vector<double>& data);
double median(const std::vector<double>& data);

struct EnsembleReport {
  std::size_t n_paths = 0;
  std::vector<double> terminal_states;
  std::vector<bool> terminal_underflow;
  std::vector<double> lyapunov;
  double mean = 0.0;
  double sd = 0.0;
  Quantiles terminal_quantiles{};
  double lyapunov_mean = 0.0;
  double lyapunov_sd = 0.0;
  Quantiles lyapunov_quantiles{};
  std::size_t clamp_total = 0;
  std::size_t underflow_total = 0;
  std::size_t saturation_total = 0;
  std::size_t cap_total = 0;
  std::vector<std::size_t> crossings;  // empty unless a band is configured
  double crossings_median = 0.0;
  std::optional<double> bracket_fraction;
  std::vector<Trajectory> kept;        // first keep_paths trajectories

  // Timing is reported separately from the deterministic payload.
  double wall_seconds = 0.0;
  double paths_per_second = 0.0;
};

/// Monte Carlo over n_paths independent Brownian paths; path i is driven by
/// seed derive_seed(base_seed, i). Paths are distributed over `workers`
/// threads and merged by index, so the report does not depend on the worker
/// count. A failing path aborts the run with its index in the message.
EnsembleReport run_ensemble(const ExperimentConfig& cfg, unsigned workers = 1);

struct ConvergenceRow {
  double mesh;
  double median_error;
  double iqr;
  std::optional<double> observed_order;  // log2(prev / this); none on the first row
};

struct ConvergenceTable {
  std::string label;
  std::vector<ConvergenceRow> rows;
};

/// Wong-Zakai ladder. For each seed: sample the coarse path on `cells`,
/// bridge-refine level by level, evaluate wong_zakai_exact at every level and
/// take the sup over the level's knots of the distance to stratonovich_exact
/// evaluated on the `reference_cells` refinement of the same path.
/// Needs refinement_levels >= 2.
ConvergenceTable wz_convergence_study(const ExperimentConfig& cfg, unsigned workers = 1);

struct CrossCheck {
  ConvergenceTable corrected;  // euler_maruyama(ito_corrected) vs stratonovich_exact at T
  ConvergenceTable gray;       // euler_maruyama(ito_gray) vs stratonovich_exact at T
};

/// Mesh ladder cells * 2^l, l = 0..refinement_levels, on shared bridge-refined
/// paths; reference is stratonovich_exact on the reference grid.
CrossCheck scheme_cross_check(const ExperimentConfig& cfg, unsigned workers = 1);

/// Runs body(i) for i in [0, n) on `workers` threads (static interleaved
/// partition). Rethrows the failure of the smallest failing index as an Error
/// whose message starts with "path <i>:".
void parallel_for_index(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace sis
