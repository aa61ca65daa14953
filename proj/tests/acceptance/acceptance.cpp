// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "sis/asymptotics.hpp"
#include "sis/coefficients.hpp"
#include "sis/config.hpp"
#include "sis/ensemble.hpp"
#include "sis/error.hpp"
#include "sis/exact.hpp"
#include "sis/integrators.hpp"
#include "sis/noise.hpp"
#include "sis/params.hpp"
#include "sis/report.hpp"
#include "sis/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "NOT ") + what;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

sis::SisParams p1() { return sis::validate_params({100, 0.5, 25, 0.02, 10}); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome deterministic_exactness() {
  Outcome o;
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int set = 0; set < 20; ++set) {
    const double N = 10 + 990 * u(gen), m = 1 + 49 * u(gen), r0 = 0.3 + 2.7 * u(gen);
    const double i0 = N * (0.01 + 0.98 * u(gen)), t_end = 0.1 + 1.9 * u(gen);
    const auto p = sis::validate_params({N, r0 * m / N, m, 0.0, i0});
    const auto tr = sis::deterministic_solution(p, sis::TimeGrid(t_end, 100));
    const auto ref = sis::testing::sis_reference_grid(N, p.beta(), m, i0, t_end, 100);
    for (std::size_t k = 1; k <= 100; ++k) worst = std::max(worst, rel(tr.states[k], ref[k]));
  }
  o.require(worst <= 1e-8, "max relative error " + fmt("%.2e", worst) + " <= 1e-8 over 20 sets x 100 points");
  return o;
}

double max_rel(const sis::Trajectory& a, const sis::Trajectory& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.states.size(); ++k) worst = std::max(worst, rel(a.states[k], b.states[k]));
  return worst;
}

Outcome sigma_zero_collapse() {
  Outcome o;
  double exact_worst = 0.0;
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int set = 0; set < 10; ++set) {
    const double N = 10 + 990 * u(gen), m = 1 + 49 * u(gen), r0 = 0.3 + 2.7 * u(gen);
    const auto p = set == 0 ? p1().with_sigma(0.0)
                            : sis::validate_params({N, r0 * m / N, m, 0.0, N * (0.01 + 0.98 * u(gen))});
    const auto path = sis::sample_path(sis::TimeGrid(1.0 + 4 * u(gen), 512), set);
    const auto det = sis::deterministic_solution(p, path.grid());
    exact_worst = std::max({exact_worst, max_rel(sis::stratonovich_exact(p, path), det),
                            max_rel(sis::wong_zakai_exact(p, path), det)});
  }
  o.require(exact_worst <= 1e-10, "exact evaluators " + fmt("%.2e", exact_worst) + " <= 1e-10");

  const auto p = p1().with_sigma(0.0);
  const auto fine = sis::sample_path(sis::TimeGrid(0.1, 1000), 3);
  const auto fine_det = sis::deterministic_solution(p, fine.grid());
  const double em = std::max(max_rel(sis::euler_maruyama(p, sis::Model::ito_gray, fine), fine_det),
                             max_rel(sis::euler_maruyama(p, sis::Model::ito_corrected, fine), fine_det));
  o.require(em <= 5e-3, "euler_maruyama h=1e-4 " + fmt("%.2e", em) + " <= 5e-3");
  const double lo = max_rel(sis::logodds_euler(p, fine), fine_det);
  o.require(lo <= 5e-3, "logodds_euler h=1e-4 " + fmt("%.2e", lo) + " <= 5e-3");

  const auto coarse = sis::sample_path(sis::TimeGrid(0.1, 100), 3);
  const double heun = max_rel(sis::heun_stratonovich(p, coarse), sis::deterministic_solution(p, coarse.grid()));
  o.require(heun <= 1e-5, "heun_stratonovich h=1e-3 " + fmt("%.2e", heun) + " <= 1e-5");

  const auto one = sis::sample_path(sis::TimeGrid(0.1, 1), 3);
  const double exact = std::exp(sis::deterministic_value(p, 0.1));
  const double e16 = std::abs(sis::wz_rk4(p, one, 16).terminal() - exact);
  const double e32 = std::abs(sis::wz_rk4(p, one, 32).terminal() - exact);
  const double order = std::log2(e16 / e32);
  o.require(order >= 3.5, "wz_rk4 observed order " + fmt("%.2f", order) + " >= 3.5");
  const double rk = max_rel(sis::wz_rk4(p, sis::sample_path(sis::TimeGrid(0.1, 256), 3), 64),
                            sis::deterministic_solution(p, sis::TimeGrid(0.1, 256)));
  o.require(rk <= 1e-6, "wz_rk4 substeps=64 " + fmt("%.2e", rk) + " <= 1e-6");
  return o;
}

Outcome wong_zakai_convergence() {
  Outcome o;
  auto cfg = sis::default_config();
  cfg.t_end = 1.0;
  cfg.cells = 16;
  cfg.refinement_levels = 8;
  cfg.reference_cells = std::size_t{1} << 18;
  cfg.n_paths = 100;
  const auto t = sis::wz_convergence_study(cfg, workers());
  bool decreasing = true;
  for (std::size_t i = 1; i < t.rows.size(); ++i) decreasing &= t.rows[i].median_error < t.rows[i - 1].median_error;
  const double first = t.rows.front().median_error, last = t.rows.back().median_error;
  o.require(decreasing, "median sup-knot error strictly decreasing over 2^4..2^12");
  o.require(last <= first / 8, "final " + fmt("%.4g", last) + " <= initial/8 = " + fmt("%.4g", first / 8));
  std::string orders = "orders";
  for (std::size_t i = t.rows.size() - 3; i < t.rows.size(); ++i) orders += fmt(" %.2f", *t.rows[i].observed_order);
  o.detail += "; " + orders;
  return o;
}

Outcome ito_stratonovich_separation() {
  Outcome o;
  auto cfg = sis::default_config();
  cfg.params = cfg.params.with_sigma(0.03);
  cfg.t_end = 1.0;
  cfg.cells = 64;
  cfg.refinement_levels = 6;
  cfg.reference_cells = std::size_t{1} << 18;
  cfg.n_paths = 200;
  cfg.scheme = {sis::Method::euler_maruyama, sis::Model::ito_corrected, 1e-12, 1};
  const auto cc = sis::scheme_cross_check(cfg, workers());
  const auto& a = cc.corrected.rows;
  const auto& b = cc.gray.rows;
  bool decreasing = true;
  for (std::size_t i = 1; i < a.size(); ++i) decreasing &= a[i].median_error < a[i - 1].median_error;
  o.require(decreasing, "corrected-drift error decreasing with mesh");
  o.require(a.back().median_error < a.front().median_error / 4,
            "corrected final " + fmt("%.4g", a.back().median_error) + " < first/4");
  const double ratio = b.back().median_error / a.back().median_error;
  o.require(ratio >= 5.0, "Gray/corrected at finest mesh " + fmt("%.2f", ratio) + " >= 5");
  const double drift = b.back().median_error / b[b.size() - 2].median_error;
  o.require(std::abs(drift - 1.0) <= 0.2, "Gray error stable over last level (ratio " + fmt("%.3f", drift) + ")");
  return o;
}

Outcome threshold_dichotomy() {
  Outcome o;
  auto ext = sis::default_config();
  ext.params = ext.params.with_beta(0.2);
  ext.t_end = 200.0;
  ext.cells = 200u * 1024;
  ext.n_paths = 500;
  ext.scheme = {sis::Method::logodds_euler, sis::Model::stratonovich, 1e-12, 1};
  const auto e = sis::run_ensemble(ext, workers());
  const double sup = sis::eta_sup(sis::make_sis_triple(ext.params, sis::BuiltinModel::strat_corrected)).value;
  o.require(e.lyapunov_mean >= -5.5 && e.lyapunov_mean <= -4.5,
            "extinct Lyapunov mean " + fmt("%.4f", e.lyapunov_mean) + " in [-5.5,-4.5]");
  o.require(e.lyapunov_quantiles.q95 <= -4.5, "q95 " + fmt("%.4f", e.lyapunov_quantiles.q95) + " <= -4.5");
  o.require(std::abs(sup + 5.0) < 1e-12, "sup eta = " + fmt("%.6g", sup));
  o.require(e.terminal_quantiles.q50 <= 1e-3 * 100, "median terminal " + fmt("%.3g", e.terminal_quantiles.q50) + " <= 0.1");

  const auto p = p1();
  const auto rec = sis::recurrence_classify(p);
  o.require(rec.verdict == sis::Recurrence::RecurrentOnInterior, std::string("R0=2 ") + sis::to_string(rec.verdict));
  const double xi = sis::eta_root(sis::make_sis_triple(p, sis::BuiltinModel::strat_corrected));
  auto per = sis::default_config();
  per.t_end = 200.0;
  per.cells = 200u * 1024;
  per.n_paths = 200;
  per.crossing_band = std::make_pair(xi - 5, xi + 5);
  per.bracket_xi = xi;
  per.window_fraction = 0.5;
  const auto r = sis::run_ensemble(per, workers());
  o.require(r.crossings_median >= 3, "xi " + fmt("%.6f", xi) + ", median upcrossings " + fmt("%.1f", r.crossings_median) + " >= 3");
  o.require(r.bracket_fraction.value_or(0.0) >= 0.9, "bracket fraction " + fmt("%.3f", r.bracket_fraction.value_or(0.0)) + " >= 0.9");
  return o;
}

Outcome general_framework() {
  Outcome o;
  const auto p = p1();
  std::vector<sis::NoiseSet> noise;
  for (std::uint64_t i = 0; i < 100; ++i) noise.push_back({sis::sample_path(sis::TimeGrid(1.0, 1000), sis::rng::derive_seed(6, i))});
  std::size_t violations = 0;
  for (auto m : {sis::BuiltinModel::ito_gray, sis::BuiltinModel::strat_corrected}) {
    const auto low = sis::as_generic(sis::make_sis_triple(p, m));
    auto high = low;
    high.h = [](double) { return 0.0; };
    violations += sis::comparison_harness(low, high, noise, p.i0()).violations;
  }
  o.require(violations == 0, "ordering violations " + std::to_string(violations) + " over 2 x 100 seeds x 1000 steps");

  const double s = p.sigma() * p.sigma(), N = p.N(), b = p.beta(), m = p.mu_plus_gamma();
  const double strat_a = 0.5 * s, strat_b = -(b + 0.5 * s * N), strat_c = b * N - m;
  const double strat_closed = 2 * strat_c / (-strat_b + std::sqrt(strat_b * strat_b - 4 * strat_a * strat_c));
  const double ito_closed = (std::sqrt(b * b - 2 * s * m) - (b - s * N)) / s;
  const double xs = sis::eta_root(sis::make_sis_triple(p, sis::BuiltinModel::strat_corrected));
  const double xi = sis::eta_root(sis::make_sis_triple(p, sis::BuiltinModel::ito_gray));
  o.require(std::abs(xs - strat_closed) <= 1e-9, "xi_strat " + fmt("%.9f", xs) + " vs closed form");
  o.require(std::abs(xi - ito_closed) <= 1e-9, "xi_ito " + fmt("%.9f", xi) + " vs closed form");

  std::size_t outside = 0, trajectories = 0;
  for (double sigma : {0.0, 0.02, 0.1, 0.5}) {
    for (double beta : {0.05, 0.2, 0.5, 2.0}) {
      const auto q = sis::validate_params({100, beta, 25, sigma, 10});
      for (std::uint64_t i = 0; i < 25; ++i) {
        const auto tr = sis::logodds_euler(q, sis::sample_path(sis::TimeGrid(50.0, 50u * 256), sis::rng::derive_seed(60, i)));
        ++trajectories;
        for (double x : tr.states) outside += !(x > 0.0 && x < 100.0);
      }
    }
  }
  o.require(outside == 0, "log-odds states outside ]0,N[: " + std::to_string(outside) + " in " + std::to_string(trajectories) + " trajectories");
  return o;
}

Outcome scale_function() {
  Outcome o;
  const auto p = p1();
  o.require(sis::scale_density(p, 0.0) == 1.0, "theta(0) == 1");
  const double t1 = sis::scale_density(p, -1.0);
  o.require(rel(t1, 99.33450714297159649) <= 1e-6, "theta(-1) = " + fmt("%.10f", t1));
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int agree = 0;
  for (int i = 0; i < 100; ++i) {
    const double N = 50 + 450 * u(gen), m = 1 + 49 * u(gen), sn = 0.05 + 2.95 * u(gen);
    const double r0 = (i % 2 == 0) ? 0.2 + 0.7 * u(gen) : 1.1 + 1.9 * u(gen);
    const auto q = sis::validate_params({N, r0 * m / N, m, sn / N, N / 2});
    const auto r = sis::recurrence_classify(q);
    agree += r.psi_left_diverges == (sis::derived_constants(q).delta >= 0.0);
  }
  o.require(agree == 100, "left doubling test agrees with sign(delta) on " + std::to_string(agree) + "/100 sets (|R0-1| >= 0.1)");
  return o;
}

Outcome reproducibility() {
  Outcome o;
  auto cfg = sis::default_config();
  cfg.n_paths = 64;
  cfg.cells = 2048;
  cfg.t_end = 4.0;
  cfg.base_seed = 0x5eed;
  cfg.crossing_band = std::make_pair(44.0, 54.0);
  cfg.bracket_xi = 49.0;
  cfg.keep_paths = 4;
  const auto one = sis::ensemble_report_json(sis::run_ensemble(cfg, 1), cfg);
  const auto again = sis::ensemble_report_json(sis::run_ensemble(cfg, 1), cfg);
  const auto eight = sis::ensemble_report_json(sis::run_ensemble(cfg, 8), cfg);
  o.require(one == again && one == eight, "ensemble report identical at 1, 1 and 8 workers");

  auto wz = sis::default_config();
  wz.cells = 16;
  wz.refinement_levels = 4;
  wz.reference_cells = 1u << 12;
  wz.n_paths = 16;
  const auto w1 = sis::convergence_json({sis::wz_convergence_study(wz, 1)}, wz);
  const auto w8 = sis::convergence_json({sis::wz_convergence_study(wz, 8)}, wz);
  o.require(w1 == w8, "Wong-Zakai table identical at 1 and 8 workers");

  wz.scheme = {sis::Method::euler_maruyama, sis::Model::ito_corrected, 1e-12, 1};
  const auto c1 = sis::scheme_cross_check(wz, 1);
  const auto c8 = sis::scheme_cross_check(wz, 8);
  o.require(sis::convergence_json({c1.corrected, c1.gray}, wz) == sis::convergence_json({c8.corrected, c8.gray}, wz),
            "cross-check tables identical at 1 and 8 workers");
  o.require(sis::canonical_json(one) == one, "report JSON canonical");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "deterministic exactness", 1.0, deterministic_exactness},
      {2, "sigma=0 collapse", 10.0, sigma_zero_collapse},
      {3, "Wong-Zakai convergence", 300.0, wong_zakai_convergence},
      {4, "Ito-Stratonovich separation", 300.0, ito_stratonovich_separation},
      {5, "threshold dichotomy", 600.0, threshold_dichotomy},
      {6, "general framework", 120.0, general_framework},
      {7, "scale function", 60.0, scale_function},
      {8, "reproducibility and parallel invariance", 60.0, reproducibility},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    o.require(secs < c.budget_seconds, "runtime " + fmt("%.2f", secs) + " s < " + fmt("%.0f", c.budget_seconds) + " s");
    if (!o.pass) ++failures;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
