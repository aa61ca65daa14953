#include "sis/exact.hpp"

#include <cmath>
#include <limits>

#include "numeric.hpp"
#include "sis/error.hpp"

namespace sis {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Trajectory make_trajectory(const SisParams& p, const TimeGrid& grid, const char* method,
                           std::uint64_t seed) {
  Trajectory tr{grid, {}, {}, {}, {}};
  tr.states.resize(grid.n_knots());
  tr.log_states.resize(grid.n_knots());
  tr.provenance = {method, p.hash_hex(), seed, grid.mesh(), 0};
  return tr;
}

/// ln of the denominator 1 + (i0/N)(E - 1) + i0 (mu+gamma)/N Q, written as a
/// sum of three nonnegative terms so no cancellation or overflow can occur.
struct LogDenominator {
  double log_rest;   // ln(1 - i0/N)
  double log_coef_e; // ln(i0/N)
  double log_coef_q; // ln(i0 (mu+gamma)/N)

  explicit LogDenominator(const SisParams& p)
      : log_rest(std::log1p(-p.i0() / p.N())),
        log_coef_e(std::log(p.i0() / p.N())),
        log_coef_q(std::log(p.i0() * p.mu_plus_gamma() / p.N())) {}

  double operator()(double exponent, double log_q) const {
    const double v = detail::log_add_exp(log_rest, log_coef_e + exponent, log_coef_q + log_q);
    // The denominator is bounded below by 1 - i0/N; this is what keeps I < N.
    if (!(v >= log_rest - 1e-12)) {
      throw Error(ErrorCode::NumericalAssertion, "denominator fell below 1 - i0/N");
    }
    return v;
  }
};

}  // namespace

double deterministic_value(const SisParams& p, double t) {
  const double delta = derived_constants(p).delta;
  const double x = delta * t;
  // ln(beta i0 A(t)) with A(t) = t * phi1(delta t).
  double log_den;
  if (t == 0.0) {
    log_den = 0.0;
  } else {
    const double log_a = std::log(t) + detail::log_phi1(x);
    log_den = detail::log_add_exp(0.0, std::log(p.beta() * p.i0()) + log_a);
  }
  return std::log(p.i0()) + x - log_den;
}

Trajectory deterministic_solution(const SisParams& p, const TimeGrid& grid) {
  auto tr = make_trajectory(p, grid, "deterministic", 0);
  for (std::size_t k = 0; k < grid.n_knots(); ++k) {
    const double log_i = k == 0 ? std::log(p.i0()) : deterministic_value(p, grid.knot(k));
    tr.log_states[k] = log_i;
    tr.states[k] = k == 0 ? p.i0() : store_from_log(log_i, p.N(), tr.diag);
  }
  refresh_extrema(tr);
  return tr;
}

Trajectory stratonovich_exact(const SisParams& p, const BrownianPath& path) {
  const auto& grid = path.grid();
  auto tr = make_trajectory(p, grid, "stratonovich_exact", path.seed());
  const double delta = derived_constants(p).delta;
  const double ns = p.N() * p.sigma();
  const double h = grid.mesh();
  const double x = delta * h;
  const double log_wl = detail::log_weight_left(x) + std::log(h);
  const double log_wr = detail::log_weight_right(x) + std::log(h);
  const LogDenominator log_den(p);
  const double log_i0 = std::log(p.i0());

  tr.states[0] = p.i0();
  tr.log_states[0] = log_i0;
  double log_q = kNegInf;
  for (std::size_t k = 0; k < grid.n_cells(); ++k) {
    const double noise_l = ns * path.value(k);
    const double noise_r = ns * path.value(k + 1);
    const double cell = delta * grid.knot(k) + detail::log_add_exp(log_wl + noise_l, log_wr + noise_r);
    log_q = detail::log_add_exp(log_q, cell);
    const double exponent = delta * grid.knot(k + 1) + noise_r;
    const double log_i = log_i0 + exponent - log_den(exponent, log_q);
    tr.log_states[k + 1] = log_i;
    tr.states[k + 1] = store_from_log(log_i, p.N(), tr.diag);
  }
  refresh_extrema(tr);
  return tr;
}

Trajectory wong_zakai_exact(const SisParams& p, const BrownianPath& path) {
  const auto& grid = path.grid();
  auto tr = make_trajectory(p, grid, "wong_zakai_exact", path.seed());
  const double delta = derived_constants(p).delta;
  const double ns = p.N() * p.sigma();
  const double h = grid.mesh();
  const double log_h = std::log(h);
  const LogDenominator log_den(p);
  const double log_i0 = std::log(p.i0());

  tr.states[0] = p.i0();
  tr.log_states[0] = log_i0;
  double log_q = kNegInf;
  double exponent = 0.0;  // delta t_k + N sigma B^pi(t_k)
  for (std::size_t k = 0; k < grid.n_cells(); ++k) {
    // The exponent is affine on the cell with slope b = delta + N sigma B'; b h:
    const double bh = delta * h + ns * path.increment(k);
    log_q = detail::log_add_exp(log_q, exponent + log_h + detail::log_phi1(bh));
    exponent = delta * grid.knot(k + 1) + ns * path.value(k + 1);
    const double log_i = log_i0 + exponent - log_den(exponent, log_q);
    tr.log_states[k + 1] = log_i;
    tr.states[k + 1] = store_from_log(log_i, p.N(), tr.diag);
  }
  refresh_extrema(tr);
  return tr;
}

std::vector<double> wong_zakai_beta(const SisParams& p, const BrownianPath& path) {
  std::vector<double> out(path.grid().n_cells());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = p.beta() + p.sigma() * cell_slope(path, k);
  return out;
}

Trajectory time_varying_deterministic(const SisParams& p, std::span<const double> beta_per_cell,
                                      const TimeGrid& grid) {
  if (beta_per_cell.size() != grid.n_cells()) {
    throw Error(ErrorCode::OutOfRange, "beta_per_cell must have one entry per cell");
  }
  Trajectory tr{grid, {}, {}, {"time_varying_deterministic", p.hash_hex(), 0, grid.mesh(), 0}, {}};
  tr.states.resize(grid.n_knots());
  const double h = grid.mesh();
  const double m = p.mu_plus_gamma();
  tr.states[0] = p.i0();
  double exponent = 0.0;  // ∫_0^t N beta - (mu+gamma)
  double den = 1.0;
  for (std::size_t k = 0; k < grid.n_cells(); ++k) {
    const double rate = p.N() * beta_per_cell[k] - m;
    den += beta_per_cell[k] * p.i0() * std::exp(exponent) * h * detail::phi1(rate * h);
    exponent += rate * h;
    const double growth = std::exp(exponent);
    if (!std::isfinite(growth) || !std::isfinite(den)) {
      throw Error(ErrorCode::NumericalAssertion, "overflow in time_varying_deterministic");
    }
    tr.states[k + 1] = p.i0() * growth / den;
  }
  refresh_extrema(tr);
  return tr;
}

}  // namespace sis
