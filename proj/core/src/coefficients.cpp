#include "sis/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sis/error.hpp"

namespace sis {
namespace {

constexpr double kBoundaryOffset = 1e-12;

std::string where(double x) {
  std::ostringstream os;
  os.precision(17);
  os << "x=" << x;
  return os.str();
}

double eta_builtin(const CoefficientTriple::Builtin& b, double x) {
  const auto& p = b.params;
  const double N = p.N();
  const double m = p.mu_plus_gamma();
  const double s2 = p.sigma() * p.sigma();
  switch (b.model) {
    case BuiltinModel::ito_gray: {
      const double u = N - x;
      return p.beta() * u - m - 0.5 * s2 * u * u;
    }
    case BuiltinModel::strat_corrected:
      return (0.5 * s2 * x - p.beta()) * (x - N) - m;
    case BuiltinModel::deterministic:
      return p.beta() * (N - x) - m;
  }
  return 0.0;
}

/// Golden-section maximisation of eta on ]a, b[; only interior points are
/// evaluated.
EtaSup golden_max(const CoefficientTriple& c, double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = eta_eval(c, x1);
  double f2 = eta_eval(c, x2);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = eta_eval(c, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = eta_eval(c, x1);
    }
  }
  return f1 >= f2 ? EtaSup{f1, x1} : EtaSup{f2, x2};
}

}  // namespace

std::string_view to_string(BuiltinModel m) noexcept {
  switch (m) {
    case BuiltinModel::ito_gray: return "ito-gray";
    case BuiltinModel::strat_corrected: return "strat-corrected";
    case BuiltinModel::deterministic: return "deterministic";
  }
  return "?";
}

BuiltinModel parse_builtin_model(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '_', '-');
  if (s == "ito-gray") return BuiltinModel::ito_gray;
  if (s == "strat-corrected" || s == "stratonovich") return BuiltinModel::strat_corrected;
  if (s == "deterministic") return BuiltinModel::deterministic;
  throw Error(ErrorCode::ConfigError, "unknown model '" + std::string(name) + "'");
}

CoefficientTriple make_sis_triple(const SisParams& p, BuiltinModel model) {
  const double N = p.N();
  const double beta = p.beta();
  const double m = p.mu_plus_gamma();
  const double sigma = p.sigma();
  CoefficientTriple c;
  c.cap = N;
  c.h = [m](double x) { return m * x; };
  switch (model) {
    case BuiltinModel::ito_gray:
      c.f = [beta, N](double x) { return beta * x * (N - x); };
      c.g.push_back([sigma, N](double x) { return sigma * x * (N - x); });
      break;
    case BuiltinModel::strat_corrected:
      c.f = [beta, sigma, N](double x) {
        return beta * x * (N - x) + 0.5 * sigma * sigma * x * (N - x) * (N - 2.0 * x);
      };
      c.g.push_back([sigma, N](double x) { return sigma * x * (N - x); });
      break;
    case BuiltinModel::deterministic:
      c.f = [beta, N](double x) { return beta * x * (N - x); };
      break;
  }
  c.builtin = CoefficientTriple::Builtin{model, p};
  return c;
}

CoefficientTriple as_generic(const CoefficientTriple& c) {
  CoefficientTriple out = c;
  out.builtin.reset();
  return out;
}

ValidationReport validate_coefficients(const CoefficientTriple& c, std::size_t grid_size) {
  if (grid_size < 16) throw Error(ErrorCode::AssumptionViolated, "grid_size must be >= 16");
  if (!(c.cap > 0.0)) throw Error(ErrorCode::AssumptionViolated, "N must be > 0");
  const double N = c.cap;
  const auto fail = [](const std::string& what) {
    throw Error(ErrorCode::AssumptionViolated, what);
  };
  if (c.f(0.0) != 0.0) fail("f(0) != 0");
  if (c.f(N) != 0.0) fail("f(N) != 0");
  for (std::size_t i = 0; i < c.g.size(); ++i) {
    if (c.g[i](0.0) != 0.0) fail("g_" + std::to_string(i + 1) + "(0) != 0");
    if (c.g[i](N) != 0.0) fail("g_" + std::to_string(i + 1) + "(N) != 0");
  }
  if (c.h(0.0) != 0.0) fail("h(0) != 0");

  ValidationReport report;
  report.grid_size = grid_size;
  report.lipschitz_diffusion.assign(c.g.size(), 0.0);
  const double dx = N / static_cast<double>(grid_size);
  double prev_drift = c.f(0.0) - c.h(0.0);
  std::vector<double> prev_g(c.g.size(), 0.0);
  for (std::size_t k = 1; k <= grid_size; ++k) {
    const double x = N * static_cast<double>(k) / static_cast<double>(grid_size);
    const double hx = c.h(x);
    if (!(hx > 0.0)) fail("h(x) <= 0 at " + where(x));
    const double drift = c.f(x) - hx;
    report.lipschitz_drift = std::max(report.lipschitz_drift, std::abs(drift - prev_drift) / dx);
    prev_drift = drift;
    for (std::size_t i = 0; i < c.g.size(); ++i) {
      const double gx = c.g[i](x);
      report.lipschitz_diffusion[i] =
          std::max(report.lipschitz_diffusion[i], std::abs(gx - prev_g[i]) / dx);
      prev_g[i] = gx;
    }
  }
  return report;
}

double eta_generic(const CoefficientTriple& c, double x) {
  double quad = 0.0;
  for (const auto& gi : c.g) {
    const double r = gi(x) / x;
    quad += r * r;
  }
  return (c.f(x) - c.h(x)) / x - 0.5 * quad;
}

double eta_eval(const CoefficientTriple& c, double x) {
  if (!(x > 0.0 && x < c.cap)) throw Error(ErrorCode::OutOfDomain, where(x));
  if (c.builtin) return eta_builtin(*c.builtin, x);
  return eta_generic(c, x);
}

double eta_left_limit(const CoefficientTriple& c) {
  if (c.builtin) return eta_builtin(*c.builtin, 0.0);
  return eta_generic(c, kBoundaryOffset * c.cap);
}

double eta_right_limit(const CoefficientTriple& c) {
  if (c.builtin) return eta_builtin(*c.builtin, c.cap);
  return eta_generic(c, c.cap * (1.0 - kBoundaryOffset));
}

EtaSup eta_sup_numeric(const CoefficientTriple& c, std::size_t grid_size) {
  const double N = c.cap;
  const auto x_at = [&](std::size_t i) {
    return N * static_cast<double>(i) / static_cast<double>(grid_size);
  };
  std::size_t best = 1;
  double best_val = eta_eval(c, x_at(1));
  for (std::size_t i = 2; i < grid_size; ++i) {
    const double v = eta_eval(c, x_at(i));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const EtaSup refined = golden_max(c, x_at(best - 1), x_at(best + 1), 1e-13 * N);
  if (refined.value >= best_val) return refined;
  return {best_val, x_at(best)};
}

std::optional<EtaSup> eta_sup_analytic(const CoefficientTriple& c) {
  if (!c.builtin) return std::nullopt;
  const auto& p = c.builtin->params;
  const double N = p.N();
  const double m = p.mu_plus_gamma();
  const double s2 = p.sigma() * p.sigma();
  const double left = eta_builtin(*c.builtin, 0.0);
  const double right = eta_builtin(*c.builtin, N);
  switch (c.builtin->model) {
    case BuiltinModel::deterministic:
      return EtaSup{left, 0.0};
    case BuiltinModel::strat_corrected:
      // Convex quadratic (linear when sigma = 0): the supremum is a boundary limit.
      return left >= right ? EtaSup{left, 0.0} : EtaSup{right, N};
    case BuiltinModel::ito_gray: {
      // Concave in u = N - x with vertex u* = beta / sigma^2.
      if (s2 > 0.0 && p.beta() / s2 < N) {
        return EtaSup{p.beta() * p.beta() / (2.0 * s2) - m, N - p.beta() / s2};
      }
      return EtaSup{left, 0.0};
    }
  }
  return std::nullopt;
}

EtaSup eta_sup(const CoefficientTriple& c) {
  const EtaSup numeric = eta_sup_numeric(c);
  const auto analytic = eta_sup_analytic(c);
  if (!analytic) return numeric;
  if (std::abs(numeric.value - analytic->value) > 1e-8 * (1.0 + std::abs(analytic->value))) {
    std::ostringstream os;
    os.precision(17);
    os << "numeric sup " << numeric.value << " vs vertex " << analytic->value;
    throw Error(ErrorCode::NumericalAssertion, os.str());
  }
  return *analytic;
}

bool eta_strictly_decreasing(const CoefficientTriple& c, std::size_t grid_size) {
  const double N = c.cap;
  double prev = eta_eval(c, kBoundaryOffset * N);
  for (std::size_t i = 1; i < grid_size; ++i) {
    const double v = eta_eval(c, N * static_cast<double>(i) / static_cast<double>(grid_size));
    if (!(v < prev)) return false;
    prev = v;
  }
  return eta_eval(c, N * (1.0 - kBoundaryOffset)) < prev;
}

double eta_root(const CoefficientTriple& c) {
  const EtaSup sup = eta_sup(c);
  if (!(sup.value > kSupDeadBand)) throw Error(ErrorCode::NoSignChange, "sup eta <= 0");
  if (!eta_strictly_decreasing(c)) throw Error(ErrorCode::NoSignChange, "eta not strictly decreasing");

  const double N = c.cap;
  const double tol = 1e-10 * (1.0 + std::abs(eta_right_limit(c)));
  constexpr std::size_t kGrid = 4096;
  double lo = kBoundaryOffset * N;
  double hi = N * (1.0 - kBoundaryOffset);
  if (!(eta_eval(c, lo) > 0.0) || !(eta_eval(c, hi) < 0.0)) {
    throw Error(ErrorCode::NoSignChange, "eta does not change sign on ]0,N[");
  }
  for (std::size_t i = 1; i < kGrid; ++i) {
    const double x = N * static_cast<double>(i) / static_cast<double>(kGrid);
    if (eta_eval(c, x) > 0.0) {
      lo = x;
    } else {
      hi = x;
      break;
    }
  }
  double mid = 0.5 * (lo + hi);
  double val = eta_eval(c, mid);
  for (int it = 0; it < 400; ++it) {
    if ((hi - lo) <= 1e-12 * N && std::abs(val) <= tol) break;
    if (val > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    const double next = 0.5 * (lo + hi);
    if (next == mid) break;
    mid = next;
    val = eta_eval(c, mid);
  }
  if (std::abs(val) > tol) throw Error(ErrorCode::NumericalAssertion, "root tolerance not met");
  return mid;
}

std::vector<double> boundary_set(const CoefficientTriple& c) {
  if (!c.builtin) throw Error(ErrorCode::OutOfDomain, "boundary set is computed for built-in models only");
  if (c.builtin->model == BuiltinModel::deterministic) return {0.0};
  return {0.0, c.cap};
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Extinct: return "Extinct";
    case Verdict::Persistent: return "Persistent";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

Classification classify_from(double sup_value, double sup_location, bool strictly_decreasing,
                             const std::optional<double>& xi) {
  Classification out;
  out.sup_value = sup_value;
  out.sup_location = sup_location;
  out.strictly_decreasing = strictly_decreasing;
  if (std::abs(sup_value) <= kSupDeadBand) {
    out.reason = "sup eta within the dead band [-1e-12, 1e-12]";
  } else if (sup_value < 0.0) {
    out.verdict = Verdict::Extinct;
  } else if (!strictly_decreasing) {
    out.reason = "sup eta > 0 but eta is not strictly decreasing on the grid";
  } else if (!xi) {
    out.reason = "sup eta > 0 but no root was found";
  } else {
    out.verdict = Verdict::Persistent;
    out.xi = xi;
  }
  return out;
}

Classification classify(const CoefficientTriple& c) {
  validate_coefficients(c);
  const EtaSup sup = eta_sup(c);
  const bool decreasing = eta_strictly_decreasing(c);
  std::optional<double> xi;
  if (sup.value > kSupDeadBand && decreasing) xi = eta_root(c);
  return classify_from(sup.value, sup.location, decreasing, xi);
}

Trajectory generic_euler_maruyama(const CoefficientTriple& c, const NoiseSet& noise, double z,
                                  double clamp_epsilon) {
  if (noise.empty() || noise.size() < c.g.size()) {
    throw Error(ErrorCode::OutOfRange, "need one Brownian path per diffusion coefficient");
  }
  const TimeGrid grid = noise.front().grid();
  for (const auto& path : noise) {
    if (!(path.grid() == grid)) throw Error(ErrorCode::OutOfRange, "noise paths must share a grid");
  }
  Trajectory tr{grid, {}, {}, {"generic_euler_maruyama", "", noise.front().seed(), grid.mesh(), 0}, {}};
  tr.states.resize(grid.n_knots());
  tr.states[0] = z;
  const double lo = clamp_epsilon * c.cap;
  const double hi = (1.0 - clamp_epsilon) * c.cap;
  const double h = grid.mesh();
  double x = z;
  for (std::size_t k = 0; k < grid.n_cells(); ++k) {
    double next = x + (c.f(x) - c.h(x)) * h;
    for (std::size_t i = 0; i < c.g.size(); ++i) next += c.g[i](x) * noise[i].increment(k);
    if (next < lo || std::isnan(next)) {
      next = lo;
      ++tr.diag.clamp_count;
    } else if (next > hi) {
      next = hi;
      ++tr.diag.clamp_count;
    }
    x = next;
    tr.states[k + 1] = x;
  }
  refresh_extrema(tr);
  return tr;
}

OrderingReport comparison_harness(const CoefficientTriple& c_low, const CoefficientTriple& c_high,
                                  std::span<const NoiseSet> noise, double z,
                                  std::size_t check_grid) {
  if (c_low.g.size() != c_high.g.size()) {
    throw Error(ErrorCode::DriftOrderViolated, "diffusion lists differ in length");
  }
  const double N = c_low.cap;
  for (std::size_t k = 0; k <= check_grid; ++k) {
    const double x = N * static_cast<double>(k) / static_cast<double>(check_grid);
    for (std::size_t i = 0; i < c_low.g.size(); ++i) {
      if (c_low.g[i](x) != c_high.g[i](x)) {
        throw Error(ErrorCode::DriftOrderViolated, "diffusion g_" + std::to_string(i + 1) + " differs at " + where(x));
      }
    }
    if (!(c_low.f(x) - c_low.h(x) <= c_high.f(x) - c_high.h(x))) {
      throw Error(ErrorCode::DriftOrderViolated, "low drift exceeds high drift at " + where(x));
    }
  }

  OrderingReport report;
  const double margin = 1e-9 * N;
  for (const auto& sample : noise) {
    const Trajectory x = generic_euler_maruyama(c_low, sample, z);
    const Trajectory y = generic_euler_maruyama(c_high, sample, z);
    ++report.samples;
    for (std::size_t k = 0; k < x.states.size(); ++k) {
      const double excess = x.states[k] - y.states[k];
      report.max_excess = std::max(report.max_excess, excess);
      if (excess > margin) ++report.violations;
      if (x.states[k] != y.states[k]) report.bit_identical = false;
    }
    report.steps += x.grid.n_cells();
  }
  return report;
}

}  // namespace sis
