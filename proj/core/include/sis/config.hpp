#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "sis/integrators.hpp"
#include "sis/params.hpp"

namespace sis {

inline constexpr int kSchemaVersion = 1;

/// One reproducible experiment. Every output of the runners is a pure
/// function of this record. The worker count is not part of it.
struct ExperimentConfig {
  explicit ExperimentConfig(const SisParams& p) : params(p) {}

  SisParams params;
  double t_end = 1.0;
  std::size_t cells = 1024;
  SchemeSpec scheme;
  std::size_t n_paths = 100;
  std::uint64_t base_seed = 1;
  unsigned refinement_levels = 0;
  std::size_t reference_cells = std::size_t{1} << 18;
  double burn_in_fraction = 0.0;
  std::optional<std::pair<double, double>> crossing_band;
  std::optional<double> bracket_xi;
  double window_fraction = 0.5;
  std::size_t keep_paths = 0;  // trajectories retained for CSV output
  std::string out_dir = ".";
};

/// Parameters used throughout the examples: N=100, beta=0.5, mu+gamma=25,
/// sigma=0.02, i0=10.
SisParams reference_params();

ExperimentConfig default_config();

/// Checks the cross-field invariants (n_paths >= 1, power-of-two cells when
/// refining, valid scheme, sane fractions and band).
/// Throws ConfigError.
void validate_config(const ExperimentConfig& cfg);

/// validate_config plus the mesh-ladder requirements: power-of-two cells and
/// reference_cells equal to the finest level times a power of two.
void validate_ladder(const ExperimentConfig& cfg);

/// Parses a JSON config. Keys: schema_version, N, beta, mu_plus_gamma, sigma,
/// i0, t_end, cells, scheme, model, substeps, clamp_epsilon, n_paths,
/// base_seed (number or decimal/0x string), refinement_levels,
/// reference_cells, burn_in_fraction, crossing_band [low, high], bracket_xi,
/// window_fraction, keep_paths, out_dir. Missing keys take default_config()
/// values; unknown keys are a ConfigError, as are parameter errors.
ExperimentConfig parse_config(std::string_view json_text);

/// Reads and parses a config file (IoError if unreadable).
ExperimentConfig load_config(const std::string& path);

/// Canonical JSON for a config; parse_config(config_to_json(c)) == c.
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace sis
