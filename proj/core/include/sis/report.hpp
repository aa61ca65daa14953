#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sis/config.hpp"
#include "sis/ensemble.hpp"
#include "sis/params.hpp"

namespace sis {

enum class Format { csv, json };
Format parse_format(std::string_view name);

/// Deterministic JSON payloads (schema_version 1). Timing never appears here.
std::string ensemble_report_json(const EnsembleReport& report, const ExperimentConfig& cfg);
std::string convergence_json(const std::vector<ConvergenceTable>& tables, const ExperimentConfig& cfg);

/// Parse and re-emit in the canonical layout; a fixed point for any output above.
std::string canonical_json(std::string_view json_text);

/// `mesh,median_error,iqr,observed_order` (order empty on the first row).
void write_convergence_csv(std::ostream& os, const ConvergenceTable& table);

/// `y,psi` samples of the scale function on [y_min, y_max].
void write_scale_csv(std::ostream& os, const SisParams& p, double y_min, double y_max, std::size_t n);

/// gnuplot scripts referencing their CSV inputs by relative path.
std::string gnuplot_fan_script(const std::string& csv_name);
std::string gnuplot_convergence_script(const std::vector<std::string>& csv_names);
std::string gnuplot_scale_script(const std::string& csv_name);

/// Writes content to path, creating parent directories. Throws IoError.
void write_text_file(const std::string& path, const std::string& content);

/// Writes the ensemble report into out_dir: ensemble.json (json) or
/// ensemble_terminal.csv (csv), trajectories.csv with the kept paths,
/// fan.gp, and the ensemble.timing.log sidecar. Returns the written paths.
std::vector<std::string> emit_report(const EnsembleReport& report, const ExperimentConfig& cfg,
                                     const std::string& out_dir, Format format);

/// Convergence tables: <label>.csv for each table plus convergence.json (json
/// format) and convergence.gp.
std::vector<std::string> emit_report(const std::vector<ConvergenceTable>& tables,
                                     const ExperimentConfig& cfg, const std::string& out_dir,
                                     Format format);

}  // namespace sis
