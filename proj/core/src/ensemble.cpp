#include "sis/ensemble.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

#include "sis/asymptotics.hpp"
#include "sis/error.hpp"
#include "sis/exact.hpp"
#include "sis/integrators.hpp"
#include "sis/noise.hpp"
#include "sis/rng.hpp"

namespace sis {

double quantile(std::vector<double> data, double q) {
  if (data.empty()) throw Error(ErrorCode::OutOfRange, "quantile of empty data");
  std::sort(data.begin(), data.end());
  const double pos = q * static_cast<double>(data.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, data.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return data[lo] + w * (data[hi] - data[lo]);
}

Quantiles quantiles(const std::vector<double>& data) {
  return {quantile(data, 0.05), quantile(data, 0.25), quantile(data, 0.5), quantile(data, 0.75),
          quantile(data, 0.95)};
}

double median(const std::vector<double>& data) { return quantile(data, 0.5); }

void parallel_for_index(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::exception_ptr> errors(n);
  const auto run = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "path " + std::to_string(i) + ": " + e.what());
    } catch (const std::exception& e) {
      throw Error(ErrorCode::NumericalAssertion, "path " + std::to_string(i) + ": " + e.what());
    }
  }
}

namespace {

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

ConvergenceTable make_table(std::string label, const std::vector<double>& meshes,
                            const std::vector<std::vector<double>>& errors_by_level) {
  ConvergenceTable table{std::move(label), {}};
  for (std::size_t l = 0; l < meshes.size(); ++l) {
    const auto& e = errors_by_level[l];
    ConvergenceRow row{meshes[l], median(e), quantile(e, 0.75) - quantile(e, 0.25), std::nullopt};
    if (l > 0) {
      const double prev = table.rows.back().median_error;
      const double ratio = meshes[l - 1] / meshes[l];
      if (prev > 0.0 && row.median_error > 0.0) {
        row.observed_order = std::log(prev / row.median_error) / std::log(ratio);
      }
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace

EnsembleReport run_ensemble(const ExperimentConfig& cfg, unsigned workers) {
  validate_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const TimeGrid grid(cfg.t_end, cfg.cells);
  const std::size_t n = cfg.n_paths;

  struct PathResult {
    double terminal = 0.0;
    bool underflow = false;
    double lyapunov = 0.0;
    std::size_t crossings = 0;
    bool brackets = false;
    BoundaryDiagnostics diag;
  };
  std::vector<PathResult> results(n);
  std::vector<Trajectory> kept(std::min(cfg.keep_paths, n), Trajectory{grid, {}, {}, {}, {}});

  parallel_for_index(n, workers, [&](std::size_t i) {
    const auto path = sample_path(grid, rng::derive_seed(cfg.base_seed, i));
    Trajectory tr = simulate(cfg.params, cfg.scheme, path);
    PathResult r;
    r.terminal = tr.terminal();
    r.underflow = tr.diag.underflow_count > 0 && tr.states.back() == std::numeric_limits<double>::min();
    r.lyapunov = lyapunov_estimate(tr, cfg.burn_in_fraction);
    if (cfg.crossing_band) r.crossings = crossing_count(tr, cfg.crossing_band->first, cfg.crossing_band->second);
    if (cfg.bracket_xi) r.brackets = brackets(tr.states, *cfg.bracket_xi, cfg.window_fraction);
    r.diag = tr.diag;
    results[i] = r;
    if (i < kept.size()) kept[i] = std::move(tr);
  });

  EnsembleReport rep;
  rep.n_paths = n;
  std::size_t bracketing = 0;
  for (const auto& r : results) {
    rep.terminal_states.push_back(r.terminal);
    rep.terminal_underflow.push_back(r.underflow);
    rep.lyapunov.push_back(r.lyapunov);
    rep.clamp_total += r.diag.clamp_count;
    rep.underflow_total += r.diag.underflow_count;
    rep.saturation_total += r.diag.saturation_count;
    rep.cap_total += r.diag.cap_count;
    if (cfg.crossing_band) rep.crossings.push_back(r.crossings);
    if (r.brackets) ++bracketing;
  }
  rep.mean = mean_of(rep.terminal_states);
  rep.sd = sd_of(rep.terminal_states, rep.mean);
  rep.terminal_quantiles = quantiles(rep.terminal_states);
  rep.lyapunov_mean = mean_of(rep.lyapunov);
  rep.lyapunov_sd = sd_of(rep.lyapunov, rep.lyapunov_mean);
  rep.lyapunov_quantiles = quantiles(rep.lyapunov);
  if (cfg.crossing_band) {
    std::vector<double> c(rep.crossings.begin(), rep.crossings.end());
    rep.crossings_median = median(c);
  }
  if (cfg.bracket_xi) rep.bracket_fraction = static_cast<double>(bracketing) / static_cast<double>(n);
  rep.kept = std::move(kept);

  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.paths_per_second = rep.wall_seconds > 0.0 ? static_cast<double>(n) / rep.wall_seconds : 0.0;
  return rep;
}

ConvergenceTable wz_convergence_study(const ExperimentConfig& cfg, unsigned workers) {
  validate_ladder(cfg);
  if (cfg.refinement_levels < 2) throw Error(ErrorCode::ConfigError, "wz study needs refinement_levels >= 2");
  const unsigned levels = cfg.refinement_levels;
  const std::size_t finest = cfg.cells << levels;
  const auto extra = static_cast<unsigned>(std::log2(static_cast<double>(cfg.reference_cells / finest)));
  const TimeGrid coarse_grid(cfg.t_end, cfg.cells);

  std::vector<std::vector<double>> errors(levels + 1, std::vector<double>(cfg.n_paths));
  parallel_for_index(cfg.n_paths, workers, [&](std::size_t i) {
    std::vector<BrownianPath> ladder{sample_path(coarse_grid, rng::derive_seed(cfg.base_seed, i))};
    for (unsigned l = 1; l <= levels; ++l) ladder.push_back(refine_bridge(ladder.back()));
    const auto reference = stratonovich_exact(cfg.params, refine_bridge(ladder.back(), extra));
    for (unsigned l = 0; l <= levels; ++l) {
      const auto wz = wong_zakai_exact(cfg.params, ladder[l]);
      const std::size_t stride = cfg.reference_cells / ladder[l].grid().n_cells();
      double err = 0.0;
      for (std::size_t k = 0; k < wz.states.size(); ++k) {
        err = std::max(err, std::abs(wz.states[k] - reference.states[k * stride]));
      }
      errors[l][i] = err;
    }
  });

  std::vector<double> meshes;
  for (unsigned l = 0; l <= levels; ++l) meshes.push_back(cfg.t_end / static_cast<double>(cfg.cells << l));
  return make_table("wong_zakai_vs_stratonovich_exact", meshes, errors);
}

CrossCheck scheme_cross_check(const ExperimentConfig& cfg, unsigned workers) {
  validate_ladder(cfg);
  const unsigned levels = cfg.refinement_levels;
  const std::size_t finest = cfg.cells << levels;
  const auto extra = static_cast<unsigned>(std::log2(static_cast<double>(cfg.reference_cells / finest)));
  const TimeGrid coarse_grid(cfg.t_end, cfg.cells);

  std::vector<std::vector<double>> err_corrected(levels + 1, std::vector<double>(cfg.n_paths));
  std::vector<std::vector<double>> err_gray(levels + 1, std::vector<double>(cfg.n_paths));
  parallel_for_index(cfg.n_paths, workers, [&](std::size_t i) {
    std::vector<BrownianPath> ladder{sample_path(coarse_grid, rng::derive_seed(cfg.base_seed, i))};
    for (unsigned l = 1; l <= levels; ++l) ladder.push_back(refine_bridge(ladder.back()));
    const double reference =
        stratonovich_exact(cfg.params, refine_bridge(ladder.back(), extra)).terminal();
    for (unsigned l = 0; l <= levels; ++l) {
      const double corrected = euler_maruyama(cfg.params, Model::ito_corrected, ladder[l],
                                              cfg.scheme.clamp_epsilon).terminal();
      const double gray =
          euler_maruyama(cfg.params, Model::ito_gray, ladder[l], cfg.scheme.clamp_epsilon).terminal();
      err_corrected[l][i] = std::abs(corrected - reference);
      err_gray[l][i] = std::abs(gray - reference);
    }
  });

  std::vector<double> meshes;
  for (unsigned l = 0; l <= levels; ++l) meshes.push_back(cfg.t_end / static_cast<double>(cfg.cells << l));
  return {make_table("em_ito_corrected_vs_stratonovich_exact", meshes, err_corrected),
          make_table("em_ito_gray_vs_stratonovich_exact", meshes, err_gray)};
}

}  // namespace sis
