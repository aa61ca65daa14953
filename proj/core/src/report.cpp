#include "sis/report.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sis/asymptotics.hpp"
#include "sis/error.hpp"

namespace sis {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json experiment_json(const ExperimentConfig& cfg) {
  auto j = json::parse(config_to_json(cfg));
  j.erase("out_dir");
  return j;
}

json quantiles_json(const Quantiles& q) {
  return {{"q05", q.q05}, {"q25", q.q25}, {"q50", q.q50}, {"q75", q.q75}, {"q95", q.q95}};
}

json table_json(const ConvergenceTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"mesh", r.mesh},
                    {"median_error", r.median_error},
                    {"iqr", r.iqr},
                    {"observed_order", r.observed_order ? json(*r.observed_order) : json()}});
  }
  return {{"label", t.label}, {"rows", rows}};
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw Error(ErrorCode::ConfigError, "unknown format '" + std::string(name) + "'");
}

std::string ensemble_report_json(const EnsembleReport& r, const ExperimentConfig& cfg) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "ensemble";
  j["config"] = experiment_json(cfg);
  j["n_paths"] = r.n_paths;
  j["terminal"] = {{"states", r.terminal_states},
                   {"underflow", r.terminal_underflow},
                   {"mean", r.mean},
                   {"sd", r.sd},
                   {"quantiles", quantiles_json(r.terminal_quantiles)}};
  j["lyapunov"] = {{"estimates", r.lyapunov},
                   {"mean", r.lyapunov_mean},
                   {"sd", r.lyapunov_sd},
                   {"quantiles", quantiles_json(r.lyapunov_quantiles)}};
  j["boundary"] = {{"clamp_total", r.clamp_total},
                   {"underflow_total", r.underflow_total},
                   {"saturation_total", r.saturation_total},
                   {"cap_total", r.cap_total}};
  if (cfg.crossing_band) {
    j["crossings"] = {{"band", {cfg.crossing_band->first, cfg.crossing_band->second}},
                      {"counts", r.crossings},
                      {"median", r.crossings_median}};
  } else {
    j["crossings"] = nullptr;
  }
  j["bracket_fraction"] = r.bracket_fraction ? json(*r.bracket_fraction) : json();
  return j.dump(2) + "\n";
}

std::string convergence_json(const std::vector<ConvergenceTable>& tables, const ExperimentConfig& cfg) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "convergence";
  j["config"] = experiment_json(cfg);
  json arr = json::array();
  for (const auto& t : tables) arr.push_back(table_json(t));
  j["tables"] = arr;
  return j.dump(2) + "\n";
}

std::string canonical_json(std::string_view json_text) {
  try {
    return json::parse(json_text).dump(2) + "\n";
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("invalid JSON: ") + e.what());
  }
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table) {
  os << "mesh,median_error,iqr,observed_order\n";
  os.precision(17);
  for (const auto& r : table.rows) {
    os << r.mesh << ',' << r.median_error << ',' << r.iqr << ',';
    if (r.observed_order) os << *r.observed_order;
    os << '\n';
  }
}

void write_scale_csv(std::ostream& os, const SisParams& p, double y_min, double y_max, std::size_t n) {
  os << "y,psi\n";
  os.precision(17);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = n == 1 ? y_min : y_min + (y_max - y_min) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double psi = scale_function(p, y);
    os << y << ',';
    if (std::isinf(psi)) {
      os << (psi > 0 ? "inf" : "-inf");
    } else {
      os << psi;
    }
    os << '\n';
  }
}

std::string gnuplot_fan_script(const std::string& csv_name) {
  std::ostringstream os;
  os << "# Trajectory fan\n"
     << "set datafile separator ','\n"
     << "set key off\n"
     << "set xlabel 't'\n"
     << "set ylabel 'I(t)'\n"
     << "set terminal pngcairo size 900,600\n"
     << "set output 'fan.png'\n"
     << "plot '" << csv_name << "' every ::1 using 1:2 with lines lc rgb '#4060a0'\n";
  return os.str();
}

std::string gnuplot_convergence_script(const std::vector<std::string>& csv_names) {
  std::ostringstream os;
  os << "# Strong error against mesh, log-log\n"
     << "set datafile separator ','\n"
     << "set logscale xy\n"
     << "set xlabel 'mesh'\n"
     << "set ylabel 'median error'\n"
     << "set key top left\n"
     << "set terminal pngcairo size 900,600\n"
     << "set output 'convergence.png'\n"
     << "plot ";
  for (std::size_t i = 0; i < csv_names.size(); ++i) {
    if (i > 0) os << ", \\\n     ";
    os << "'" << csv_names[i] << "' every ::1 using 1:2 with linespoints title '" << csv_names[i] << "'";
  }
  os << '\n';
  return os.str();
}

std::string gnuplot_scale_script(const std::string& csv_name) {
  std::ostringstream os;
  os << "# Scale function psi of the log-odds process\n"
     << "set datafile separator ','\n"
     << "set key off\n"
     << "set xlabel 'y'\n"
     << "set ylabel 'psi(y)'\n"
     << "set terminal pngcairo size 900,600\n"
     << "set output 'scale.png'\n"
     << "plot '" << csv_name << "' every ::1 using 1:2 with lines\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::error_code ec;
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path + "'");
}

std::vector<std::string> emit_report(const EnsembleReport& report, const ExperimentConfig& cfg,
                                     const std::string& out_dir, Format format) {
  std::vector<std::string> written;
  if (format == Format::json) {
    written.push_back(join(out_dir, "ensemble.json"));
    write_text_file(written.back(), ensemble_report_json(report, cfg));
  } else {
    std::ostringstream os;
    os.precision(17);
    os << "path,terminal,underflow,lyapunov\n";
    for (std::size_t i = 0; i < report.n_paths; ++i) {
      os << i << ',' << report.terminal_states[i] << ',' << (report.terminal_underflow[i] ? 1 : 0)
         << ',' << report.lyapunov[i] << '\n';
    }
    written.push_back(join(out_dir, "ensemble_terminal.csv"));
    write_text_file(written.back(), os.str());
  }
  std::ostringstream traj;
  write_trajectories_csv(traj, report.kept);
  written.push_back(join(out_dir, "trajectories.csv"));
  write_text_file(written.back(), traj.str());
  written.push_back(join(out_dir, "fan.gp"));
  write_text_file(written.back(), gnuplot_fan_script("trajectories.csv"));

  std::ostringstream log;
  log << "wall_seconds=" << report.wall_seconds << "\npaths_per_second=" << report.paths_per_second << '\n';
  written.push_back(join(out_dir, "ensemble.timing.log"));
  write_text_file(written.back(), log.str());
  return written;
}

std::vector<std::string> emit_report(const std::vector<ConvergenceTable>& tables,
                                     const ExperimentConfig& cfg, const std::string& out_dir,
                                     Format format) {
  std::vector<std::string> written;
  std::vector<std::string> csv_names;
  for (const auto& t : tables) {
    std::ostringstream os;
    write_convergence_csv(os, t);
    csv_names.push_back(t.label + ".csv");
    written.push_back(join(out_dir, csv_names.back()));
    write_text_file(written.back(), os.str());
  }
  if (format == Format::json) {
    written.push_back(join(out_dir, "convergence.json"));
    write_text_file(written.back(), convergence_json(tables, cfg));
  }
  written.push_back(join(out_dir, "convergence.gp"));
  write_text_file(written.back(), gnuplot_convergence_script(csv_names));
  return written;
}

}  // namespace sis
