// sis: command line front end for the stochastic SIS toolkit.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical assertion failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "sis/asymptotics.hpp"
#include "sis/coefficients.hpp"
#include "sis/config.hpp"
#include "sis/ensemble.hpp"
#include "sis/error.hpp"
#include "sis/exact.hpp"
#include "sis/integrators.hpp"
#include "sis/noise.hpp"
#include "sis/report.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct GlobalOptions {
  std::string config_path;
  std::string seed;
  std::string out_dir;
  unsigned workers = 1;
  std::string format = "json";

  std::optional<double> N, beta, mu_plus_gamma, sigma, i0, t_end;
  std::optional<std::size_t> cells, paths, substeps;
  std::optional<unsigned> levels;
  std::string scheme, model;
};

int exit_code_for(sis::ErrorCode code) {
  switch (code) {
    case sis::ErrorCode::ConfigError:
    case sis::ErrorCode::IoError:
    case sis::ErrorCode::NonPositive:
    case sis::ErrorCode::NegativeSigma:
    case sis::ErrorCode::InitialOutOfRange:
    case sis::ErrorCode::OutOfRange:
    case sis::ErrorCode::BadBand:
    case sis::ErrorCode::WindowTooShort:
      return kExitConfig;
    default:
      return kExitNumeric;
  }
}

/// Config file (or defaults) with command-line overrides applied on top.
sis::ExperimentConfig build_config(const GlobalOptions& g) {
  json j = json::object();
  if (!g.config_path.empty()) {
    std::ifstream in(g.config_path);
    if (!in) throw sis::Error(sis::ErrorCode::IoError, "cannot read config '" + g.config_path + "'");
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw sis::Error(sis::ErrorCode::ConfigError, std::string("invalid JSON: ") + e.what());
    }
  }
  const auto put = [&](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  put("N", g.N);
  put("beta", g.beta);
  put("mu_plus_gamma", g.mu_plus_gamma);
  put("sigma", g.sigma);
  put("i0", g.i0);
  put("t_end", g.t_end);
  put("cells", g.cells);
  put("n_paths", g.paths);
  put("substeps", g.substeps);
  put("refinement_levels", g.levels);
  if (!g.scheme.empty()) j["scheme"] = g.scheme;
  if (!g.model.empty()) j["model"] = g.model;
  if (!g.seed.empty()) j["base_seed"] = g.seed;
  if (!g.out_dir.empty()) j["out_dir"] = g.out_dir;
  return sis::parse_config(j.dump());
}

void emit(const GlobalOptions& g, const std::string& name, const std::string& content) {
  if (g.out_dir.empty()) {
    std::cout << content;
  } else {
    sis::write_text_file(g.out_dir + "/" + name, content);
    std::cerr << "wrote " << g.out_dir << "/" << name << '\n';
  }
}

int cmd_simulate(const GlobalOptions& g) {
  const auto cfg = build_config(g);
  const auto path = sis::sample_path(sis::TimeGrid(cfg.t_end, cfg.cells), cfg.base_seed);
  const auto traj = sis::simulate(cfg.params, cfg.scheme, path);
  std::ostringstream os;
  sis::write_trajectory_csv(os, traj);
  emit(g, "trajectory.csv", os.str());
  if (traj.diag.clamp_count > 0) std::cerr << "clamped steps: " << traj.diag.clamp_count << '\n';
  return kExitOk;
}

int cmd_exact(const GlobalOptions& g, const std::string& method, bool with_path) {
  const auto cfg = build_config(g);
  const sis::TimeGrid grid(cfg.t_end, cfg.cells);
  const auto path = sis::sample_path(grid, cfg.base_seed);
  sis::Trajectory traj = [&] {
    if (method == "deterministic") return sis::deterministic_solution(cfg.params, grid);
    if (method == "wong-zakai" || method == "wong_zakai") return sis::wong_zakai_exact(cfg.params, path);
    if (method == "stratonovich") return sis::stratonovich_exact(cfg.params, path);
    throw sis::Error(sis::ErrorCode::ConfigError, "unknown exact method '" + method + "'");
  }();
  std::ostringstream os;
  sis::write_trajectory_csv(os, traj);
  emit(g, "exact.csv", os.str());
  if (with_path) {
    std::ostringstream ps;
    sis::write_path_csv(ps, path);
    emit(g, "path.csv", ps.str());
  }
  return kExitOk;
}

int emit_tables(const GlobalOptions& g, const sis::ExperimentConfig& cfg,
                const std::vector<sis::ConvergenceTable>& tables) {
  const auto format = sis::parse_format(g.format);
  if (!g.out_dir.empty()) {
    for (const auto& f : sis::emit_report(tables, cfg, g.out_dir, format)) std::cerr << "wrote " << f << '\n';
  } else if (format == sis::Format::json) {
    std::cout << sis::convergence_json(tables, cfg);
  } else {
    for (const auto& t : tables) {
      std::cout << "# " << t.label << '\n';
      sis::write_convergence_csv(std::cout, t);
    }
  }
  return kExitOk;
}

int cmd_wz(const GlobalOptions& g) {
  const auto cfg = build_config(g);
  return emit_tables(g, cfg, {sis::wz_convergence_study(cfg, g.workers)});
}

int cmd_converge(const GlobalOptions& g) {
  const auto cfg = build_config(g);
  const auto cc = sis::scheme_cross_check(cfg, g.workers);
  return emit_tables(g, cfg, {cc.corrected, cc.gray});
}

json classification_json(const sis::CoefficientTriple& c) {
  const auto cls = sis::classify(c);
  json j{{"verdict", sis::to_string(cls.verdict)},
         {"sup_eta", cls.sup_value},
         {"sup_location", cls.sup_location},
         {"strictly_decreasing", cls.strictly_decreasing},
         {"eta_left_limit", sis::eta_left_limit(c)},
         {"eta_right_limit", sis::eta_right_limit(c)},
         {"boundary_set", sis::boundary_set(c)}};
  j["xi"] = cls.xi ? json(*cls.xi) : json();
  if (!cls.reason.empty()) j["reason"] = cls.reason;
  return j;
}

int cmd_classify(const GlobalOptions& g) {
  const auto cfg = build_config(g);
  const auto& p = cfg.params;
  const auto dc = sis::derived_constants(p);
  json out;
  out["schema_version"] = sis::kSchemaVersion;
  out["kind"] = "classification";
  out["params"] = json::parse(sis::config_to_json(cfg));
  out["derived"] = {{"delta", dc.delta},
                    {"r0", dc.r0},
                    {"r0_stochastic", dc.r0_stochastic},
                    {"deterministic_limit", sis::deterministic_limit(p)}};
  json models;
  for (auto m : {sis::BuiltinModel::ito_gray, sis::BuiltinModel::strat_corrected,
                 sis::BuiltinModel::deterministic}) {
    models[std::string(sis::to_string(m))] = classification_json(sis::make_sis_triple(p, m));
  }
  models["ito-gray"]["threshold_verdict"] = sis::to_string(sis::ito_threshold_verdict(p));
  try {
    models["ito-gray"]["persistence_level"] = sis::ito_persistence_level(p);
  } catch (const sis::Error&) {
    models["ito-gray"]["persistence_level"] = nullptr;
  }
  if (p.sigma() > 0.0) {
    const auto rec = sis::recurrence_classify(p);
    models["strat-corrected"]["recurrence"] = {{"verdict", sis::to_string(rec.verdict)},
                                               {"psi_left_diverges", rec.psi_left_diverges},
                                               {"psi_right_diverges", rec.psi_right_diverges},
                                               {"numeric_agrees", rec.numeric_agrees}};
  }
  out["models"] = models;
  emit(g, "classification.json", out.dump(2) + "\n");
  return kExitOk;
}

int cmd_ensemble(const GlobalOptions& g) {
  const auto cfg = build_config(g);
  const auto report = sis::run_ensemble(cfg, g.workers);
  const auto format = sis::parse_format(g.format);
  if (!g.out_dir.empty()) {
    for (const auto& f : sis::emit_report(report, cfg, g.out_dir, format)) std::cerr << "wrote " << f << '\n';
  } else {
    std::cout << sis::ensemble_report_json(report, cfg);
  }
  std::cerr << "paths/sec: " << report.paths_per_second << '\n';
  return kExitOk;
}

int cmd_scale(const GlobalOptions& g, double y_min, double y_max, std::size_t samples) {
  const auto cfg = build_config(g);
  if (!(y_min < y_max) || samples < 2) throw sis::Error(sis::ErrorCode::ConfigError, "need y-min < y-max and samples >= 2");
  std::ostringstream os;
  sis::write_scale_csv(os, cfg.params, y_min, y_max, samples);
  emit(g, "scale.csv", os.str());
  if (!g.out_dir.empty()) emit(g, "scale.gp", sis::gnuplot_scale_script("scale.csv"));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic SIS toolkit: exact solutions, schemes, Wong-Zakai ladders, classification"};
  app.require_subcommand(1);
  GlobalOptions g;

  app.add_option("--config", g.config_path, "JSON experiment config");
  app.add_option("--seed", g.seed, "Base seed (decimal or 0x-hex)");
  app.add_option("--out-dir", g.out_dir, "Write outputs into this directory instead of stdout");
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--N", g.N, "Population size");
  app.add_option("--beta", g.beta, "Transmission rate");
  app.add_option("--mu_plus_gamma", g.mu_plus_gamma, "Removal rate mu+gamma");
  app.add_option("--sigma", g.sigma, "Noise intensity");
  app.add_option("--i0", g.i0, "Initial infected");
  app.add_option("--t-end", g.t_end, "Time horizon");
  app.add_option("--cells", g.cells, "Grid cells");
  app.add_option("--paths", g.paths, "Monte Carlo paths");
  app.add_option("--levels", g.levels, "Refinement levels");
  app.add_option("--scheme", g.scheme, "euler_maruyama | heun_stratonovich | logodds_euler | wz_rk4");
  app.add_option("--model", g.model, "ito_gray | ito_corrected | stratonovich");
  app.add_option("--substeps", g.substeps, "RK4 substeps per cell (wz_rk4)");

  auto* simulate = app.add_subcommand("simulate", "One trajectory with the chosen scheme");
  auto* exact = app.add_subcommand("exact", "Closed-form solutions on a sampled path");
  std::string exact_method = "stratonovich";
  bool with_path = false;
  exact->add_option("--method", exact_method, "deterministic | stratonovich | wong-zakai");
  exact->add_flag("--with-path", with_path, "Also emit the Brownian path as t,B");
  auto* wz = app.add_subcommand("wz", "Wong-Zakai convergence ladder");
  auto* classify = app.add_subcommand("classify", "Threshold, eta and recurrence verdicts for all models");
  auto* ensemble = app.add_subcommand("ensemble", "Monte Carlo ensemble report");
  auto* converge = app.add_subcommand("converge", "Ito/Stratonovich scheme cross-check");
  auto* scale = app.add_subcommand("scale", "Scale function samples");
  double y_min = -10.0, y_max = 5.0;
  std::size_t samples = 301;
  scale->add_option("--y-min", y_min);
  scale->add_option("--y-max", y_max);
  scale->add_option("--samples", samples);
  for (auto* sub : {simulate, exact, wz, classify, ensemble, converge, scale}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(g);
    if (*exact) return cmd_exact(g, exact_method, with_path);
    if (*wz) return cmd_wz(g);
    if (*classify) return cmd_classify(g);
    if (*ensemble) return cmd_ensemble(g);
    if (*converge) return cmd_converge(g);
    if (*scale) return cmd_scale(g, y_min, y_max, samples);
  } catch (const sis::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}
