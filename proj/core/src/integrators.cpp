#include "sis/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sis/error.hpp"

namespace sis {
namespace {

std::string normalize(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

struct Clamp {
  double lo;
  double hi;
  std::size_t* counter;

  double operator()(double x) const {
    if (x < lo || std::isnan(x)) {
      ++*counter;
      return lo;
    }
    if (x > hi) {
      ++*counter;
      return hi;
    }
    return x;
  }
};

Trajectory start(const SisParams& p, const BrownianPath& path, std::string method,
                 unsigned substeps = 0) {
  Trajectory tr{path.grid(), {}, {}, {}, {}};
  tr.states.resize(path.grid().n_knots());
  tr.states[0] = p.i0();
  tr.provenance = {std::move(method), p.hash_hex(), path.seed(), path.grid().mesh(), substeps};
  return tr;
}

constexpr double kExpCap = 709.0;

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::euler_maruyama: return "euler_maruyama";
    case Method::heun_stratonovich: return "heun_stratonovich";
    case Method::logodds_euler: return "logodds_euler";
    case Method::wz_rk4: return "wz_rk4";
  }
  return "?";
}

std::string_view to_string(Model m) noexcept {
  switch (m) {
    case Model::ito_gray: return "ito_gray";
    case Model::ito_corrected: return "ito_corrected";
    case Model::stratonovich: return "stratonovich";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  const auto s = normalize(name);
  if (s == "euler_maruyama" || s == "em") return Method::euler_maruyama;
  if (s == "heun_stratonovich" || s == "heun") return Method::heun_stratonovich;
  if (s == "logodds_euler" || s == "logodds") return Method::logodds_euler;
  if (s == "wz_rk4") return Method::wz_rk4;
  throw Error(ErrorCode::ConfigError, "unknown scheme '" + std::string(name) + "'");
}

Model parse_model(std::string_view name) {
  const auto s = normalize(name);
  if (s == "ito_gray") return Model::ito_gray;
  if (s == "ito_corrected") return Model::ito_corrected;
  if (s == "stratonovich" || s == "strat_corrected") return Model::stratonovich;
  throw Error(ErrorCode::ConfigError, "unknown model '" + std::string(name) + "'");
}

void validate_scheme(const SchemeSpec& spec) {
  const auto bad = [&] {
    throw Error(ErrorCode::ConfigError, std::string(to_string(spec.method)) +
                                            " cannot integrate model " +
                                            std::string(to_string(spec.model)));
  };
  switch (spec.method) {
    case Method::euler_maruyama:
      if (spec.model == Model::stratonovich) bad();
      break;
    case Method::heun_stratonovich:
    case Method::wz_rk4:
      if (spec.model != Model::stratonovich) bad();
      break;
    case Method::logodds_euler:
      if (spec.model == Model::ito_gray) bad();
      break;
  }
  if (!(spec.clamp_epsilon >= 0.0 && spec.clamp_epsilon < 0.5)) {
    throw Error(ErrorCode::ConfigError, "clamp_epsilon must lie in [0, 0.5)");
  }
  if (spec.substeps < 1) throw Error(ErrorCode::ConfigError, "substeps must be >= 1");
}

double ito_correction(const SisParams& p, double x) noexcept {
  const double s2 = p.sigma() * p.sigma();
  return 0.5 * s2 * x * (p.N() - x) * (p.N() - 2.0 * x);
}

double model_drift(const SisParams& p, Model model, double x) noexcept {
  const double gray = p.beta() * x * (p.N() - x) - p.mu_plus_gamma() * x;
  return model == Model::ito_corrected ? gray + ito_correction(p, x) : gray;
}

double model_diffusion(const SisParams& p, double x) noexcept {
  return p.sigma() * x * (p.N() - x);
}

Trajectory euler_maruyama(const SisParams& p, Model model, const BrownianPath& path,
                          double clamp_epsilon) {
  validate_scheme({Method::euler_maruyama, model, clamp_epsilon, 1});
  auto tr = start(p, path, "euler_maruyama/" + std::string(to_string(model)));
  const Clamp clamp{clamp_epsilon * p.N(), (1.0 - clamp_epsilon) * p.N(), &tr.diag.clamp_count};
  const double h = path.grid().mesh();
  double x = p.i0();
  for (std::size_t k = 0; k < path.grid().n_cells(); ++k) {
    x = clamp(x + model_drift(p, model, x) * h + model_diffusion(p, x) * path.increment(k));
    tr.states[k + 1] = x;
  }
  refresh_extrema(tr);
  return tr;
}

Trajectory heun_stratonovich(const SisParams& p, const BrownianPath& path, double clamp_epsilon) {
  auto tr = start(p, path, "heun_stratonovich");
  const Clamp clamp{clamp_epsilon * p.N(), (1.0 - clamp_epsilon) * p.N(), &tr.diag.clamp_count};
  const double h = path.grid().mesh();
  double x = p.i0();
  for (std::size_t k = 0; k < path.grid().n_cells(); ++k) {
    const double db = path.increment(k);
    const double a0 = model_drift(p, Model::stratonovich, x);
    const double g0 = model_diffusion(p, x);
    const double pred = clamp(x + a0 * h + g0 * db);
    const double a1 = model_drift(p, Model::stratonovich, pred);
    const double g1 = model_diffusion(p, pred);
    x = clamp(x + 0.5 * (a0 + a1) * h + 0.5 * (g0 + g1) * db);
    tr.states[k + 1] = x;
  }
  refresh_extrema(tr);
  return tr;
}

Trajectory logodds_euler(const SisParams& p, const BrownianPath& path) {
  auto tr = start(p, path, "logodds_euler");
  tr.log_states.resize(tr.states.size());
  const double h = path.grid().mesh();
  const double delta = derived_constants(p).delta;
  const double m = p.mu_plus_gamma();
  const double sn = p.sigma() * p.N();
  const double log_n = std::log(p.N());
  const auto log_state = [&](double j) {
    return j < 0.0 ? log_n + j - std::log1p(std::exp(j)) : log_n - std::log1p(std::exp(-j));
  };

  double j = std::log(p.i0()) - std::log(p.N() - p.i0());
  tr.log_states[0] = std::log(p.i0());
  for (std::size_t k = 0; k < path.grid().n_cells(); ++k) {
    double je = j;
    if (je > kExpCap) {
      je = kExpCap;
      ++tr.diag.cap_count;
    }
    j += (delta - m * std::exp(je)) * h + sn * path.increment(k);
    const double ls = log_state(j);
    tr.log_states[k + 1] = ls;
    tr.states[k + 1] = store_from_log(ls, p.N(), tr.diag);
  }
  refresh_extrema(tr);
  return tr;
}

Trajectory wz_rk4(const SisParams& p, const BrownianPath& path, unsigned substeps,
                  double clamp_epsilon) {
  if (substeps < 1) throw Error(ErrorCode::ConfigError, "substeps must be >= 1");
  auto tr = start(p, path, "wz_rk4", substeps);
  const Clamp clamp{clamp_epsilon * p.N(), (1.0 - clamp_epsilon) * p.N(), &tr.diag.clamp_count};
  const double h = path.grid().mesh() / substeps;
  const double N = p.N();
  double x = p.i0();
  for (std::size_t k = 0; k < path.grid().n_cells(); ++k) {
    const double rate = p.beta() + p.sigma() * cell_slope(path, k);
    const auto rhs = [&](double y) { return rate * y * (N - y) - p.mu_plus_gamma() * y; };
    for (unsigned s = 0; s < substeps; ++s) {
      const double k1 = rhs(x);
      const double k2 = rhs(x + 0.5 * h * k1);
      const double k3 = rhs(x + 0.5 * h * k2);
      const double k4 = rhs(x + h * k3);
      x = clamp(x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    }
    tr.states[k + 1] = x;
  }
  refresh_extrema(tr);
  return tr;
}

Trajectory simulate(const SisParams& p, const SchemeSpec& spec, const BrownianPath& path) {
  validate_scheme(spec);
  switch (spec.method) {
    case Method::euler_maruyama: return euler_maruyama(p, spec.model, path, spec.clamp_epsilon);
    case Method::heun_stratonovich: return heun_stratonovich(p, path, spec.clamp_epsilon);
    case Method::logodds_euler: return logodds_euler(p, path);
    case Method::wz_rk4: return wz_rk4(p, path, spec.substeps, spec.clamp_epsilon);
  }
  throw Error(ErrorCode::ConfigError, "unknown method");
}

}  // namespace sis
