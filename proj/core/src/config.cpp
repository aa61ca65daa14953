#include "sis/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sis/error.hpp"
#include "sis/noise.hpp"

namespace sis {
namespace {

using nlohmann::json;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("key '") + key + "': " + e.what());
  }
}

std::size_t get_count(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw Error(ErrorCode::ConfigError, std::string("key '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

SisParams reference_params() {
  return validate_params({.N = 100.0, .beta = 0.5, .mu_plus_gamma = 25.0, .sigma = 0.02, .i0 = 10.0});
}

ExperimentConfig default_config() { return ExperimentConfig{reference_params()}; }

void validate_config(const ExperimentConfig& cfg) {
  const auto fail = [](const std::string& what) { throw Error(ErrorCode::ConfigError, what); };
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) fail("t_end must be > 0");
  if (cfg.cells < 1) fail("cells must be >= 1");
  if (cfg.n_paths < 1) fail("n_paths must be >= 1");
  if (cfg.refinement_levels > 0 && !is_power_of_two(cfg.cells)) {
    fail("cells must be a power of two when refinement_levels > 0");
  }
  if (cfg.refinement_levels > 30) fail("refinement_levels too large");
  if (!(cfg.burn_in_fraction >= 0.0 && cfg.burn_in_fraction < 1.0)) fail("burn_in_fraction must lie in [0, 1)");
  if (!(cfg.window_fraction > 0.0 && cfg.window_fraction <= 1.0)) fail("window_fraction must lie in ]0, 1]");
  if (cfg.crossing_band) {
    const auto [lo, hi] = *cfg.crossing_band;
    if (!(lo > 0.0 && lo < hi && hi < cfg.params.N())) fail("crossing_band must satisfy 0 < low < high < N");
  }
  validate_scheme(cfg.scheme);
}

void validate_ladder(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (!is_power_of_two(cfg.cells)) throw Error(ErrorCode::ConfigError, "cells must be a power of two for a mesh ladder");
  const std::size_t finest = cfg.cells << cfg.refinement_levels;
  if (cfg.reference_cells < finest || cfg.reference_cells % finest != 0 ||
      !is_power_of_two(cfg.reference_cells / finest)) {
    throw Error(ErrorCode::ConfigError, "reference_cells must be the finest level times a power of two");
  }
}

ExperimentConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, "config must be a JSON object");

  static const std::set<std::string> known{
      "schema_version", "N", "beta", "mu_plus_gamma", "sigma", "i0", "t_end", "cells", "scheme",
      "model", "substeps", "clamp_epsilon", "n_paths", "base_seed", "refinement_levels",
      "reference_cells", "burn_in_fraction", "crossing_band", "bracket_xi", "window_fraction",
      "keep_paths", "out_dir"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw Error(ErrorCode::ConfigError, "unknown key '" + key + "'");
  }
  if (j.contains("schema_version") && get_as<int>(j, "schema_version") != kSchemaVersion) {
    throw Error(ErrorCode::ConfigError, "unsupported schema_version");
  }

  ExperimentConfig cfg = default_config();
  RawParams raw = cfg.params.raw();
  if (j.contains("N")) raw.N = get_as<double>(j, "N");
  if (j.contains("beta")) raw.beta = get_as<double>(j, "beta");
  if (j.contains("mu_plus_gamma")) raw.mu_plus_gamma = get_as<double>(j, "mu_plus_gamma");
  if (j.contains("sigma")) raw.sigma = get_as<double>(j, "sigma");
  if (j.contains("i0")) raw.i0 = get_as<double>(j, "i0");
  try {
    cfg.params = validate_params(raw);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }

  if (j.contains("t_end")) cfg.t_end = get_as<double>(j, "t_end");
  if (j.contains("cells")) cfg.cells = get_count(j, "cells");
  if (j.contains("scheme")) cfg.scheme.method = parse_method(get_as<std::string>(j, "scheme"));
  if (j.contains("model")) cfg.scheme.model = parse_model(get_as<std::string>(j, "model"));
  if (j.contains("substeps")) cfg.scheme.substeps = static_cast<unsigned>(get_count(j, "substeps"));
  if (j.contains("clamp_epsilon")) cfg.scheme.clamp_epsilon = get_as<double>(j, "clamp_epsilon");
  if (j.contains("n_paths")) cfg.n_paths = get_count(j, "n_paths");
  if (j.contains("base_seed")) {
    const auto& s = j.at("base_seed");
    if (s.is_string()) {
      cfg.base_seed = parse_seed(s.get<std::string>());
    } else if (s.is_number_unsigned() || (s.is_number_integer() && s.get<long long>() >= 0)) {
      cfg.base_seed = s.get<std::uint64_t>();
    } else {
      throw Error(ErrorCode::ConfigError, "base_seed must be a nonnegative integer or string");
    }
  }
  if (j.contains("refinement_levels")) cfg.refinement_levels = static_cast<unsigned>(get_count(j, "refinement_levels"));
  if (j.contains("reference_cells")) cfg.reference_cells = get_count(j, "reference_cells");
  if (j.contains("burn_in_fraction")) cfg.burn_in_fraction = get_as<double>(j, "burn_in_fraction");
  if (j.contains("crossing_band") && !j.at("crossing_band").is_null()) {
    const auto band = get_as<std::vector<double>>(j, "crossing_band");
    if (band.size() != 2) throw Error(ErrorCode::ConfigError, "crossing_band must be [low, high]");
    cfg.crossing_band = std::pair{band[0], band[1]};
  }
  if (j.contains("bracket_xi") && !j.at("bracket_xi").is_null()) cfg.bracket_xi = get_as<double>(j, "bracket_xi");
  if (j.contains("window_fraction")) cfg.window_fraction = get_as<double>(j, "window_fraction");
  if (j.contains("keep_paths")) cfg.keep_paths = get_count(j, "keep_paths");
  if (j.contains("out_dir")) cfg.out_dir = get_as<std::string>(j, "out_dir");
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["N"] = cfg.params.N();
  j["beta"] = cfg.params.beta();
  j["mu_plus_gamma"] = cfg.params.mu_plus_gamma();
  j["sigma"] = cfg.params.sigma();
  j["i0"] = cfg.params.i0();
  j["t_end"] = cfg.t_end;
  j["cells"] = cfg.cells;
  j["scheme"] = std::string(to_string(cfg.scheme.method));
  j["model"] = std::string(to_string(cfg.scheme.model));
  j["substeps"] = cfg.scheme.substeps;
  j["clamp_epsilon"] = cfg.scheme.clamp_epsilon;
  j["n_paths"] = cfg.n_paths;
  j["base_seed"] = cfg.base_seed;
  j["refinement_levels"] = cfg.refinement_levels;
  j["reference_cells"] = cfg.reference_cells;
  j["burn_in_fraction"] = cfg.burn_in_fraction;
  j["crossing_band"] = cfg.crossing_band ? json::array({cfg.crossing_band->first, cfg.crossing_band->second}) : json();
  j["bracket_xi"] = cfg.bracket_xi ? json(*cfg.bracket_xi) : json();
  j["window_fraction"] = cfg.window_fraction;
  j["keep_paths"] = cfg.keep_paths;
  j["out_dir"] = cfg.out_dir;
  return j.dump(2);
}

}  // namespace sis
