#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sis/noise.hpp"
#include "sis/params.hpp"
#include "sis/trajectory.hpp"

namespace sis {

using ScalarFn = std::function<double(double)>;

enum class BuiltinModel { ito_gray, strat_corrected, deterministic };

std::string_view to_string(BuiltinModel m) noexcept;
/// Accepts `ito-gray`, `strat-corrected`, `deterministic` (or `_` spellings).
BuiltinModel parse_builtin_model(std::string_view name);

/// Coefficients of dX = [f(X) - h(X)] dt + sum_i g_i(X) dB_i on ]0, cap[.
/// Built-in SIS models carry their parameters so closed forms can be used
/// alongside the generic evaluation.
struct CoefficientTriple {
  ScalarFn f;
  ScalarFn h;
  std::vector<ScalarFn> g;
  double cap = 0.0;

  struct Builtin {
    BuiltinModel model;
    SisParams params;
  };
  std::optional<Builtin> builtin;
};

CoefficientTriple make_sis_triple(const SisParams& p, BuiltinModel model);

/// Same coefficients with the built-in tag dropped, forcing generic evaluation.
CoefficientTriple as_generic(const CoefficientTriple& c);

struct ValidationReport {
  double lipschitz_drift = 0.0;            // finite-difference slope bound of f - h
  std::vector<double> lipschitz_diffusion; // one per g_i
  std::size_t grid_size = 0;
};

/// Checks f(0) = f(N) = g_i(0) = g_i(N) = 0 and h(0) = 0 exactly, and h > 0 on
/// the grid points k N / grid_size, k = 1..grid_size. Throws
/// AssumptionViolated naming the condition and location. The Lipschitz
/// estimates are informational only.
ValidationReport validate_coefficients(const CoefficientTriple& c, std::size_t grid_size = 1024);

/// eta(x) = (f(x) - h(x))/x - (1/2) sum_i g_i(x)^2 / x^2, always from the
/// generic definition.
double eta_generic(const CoefficientTriple& c, double x);

/// eta(x) on ]0, N[; simplified quadratics for the built-in models, generic
/// otherwise. Throws OutOfDomain outside the open interval.
double eta_eval(const CoefficientTriple& c, double x);

/// One-sided limits eta(0+) and eta(N-). Analytic for built-ins; generic
/// triples are evaluated at 1e-12 N from the boundary.
double eta_left_limit(const CoefficientTriple& c);
double eta_right_limit(const CoefficientTriple& c);

struct EtaSup {
  double value;
  double location;  // 0 or N when the supremum is a boundary limit
};

/// Dense grid plus golden-section search over ]0,N[.
EtaSup eta_sup_numeric(const CoefficientTriple& c, std::size_t grid_size = 4096);
/// Vertex of the quadratic (or boundary limit) for built-ins; nullopt otherwise.
std::optional<EtaSup> eta_sup_analytic(const CoefficientTriple& c);

/// Supremum of eta over ]0,N[. For built-ins the analytic value is returned
/// after checking it against the numeric search within 1e-8 (1 + |sup|);
/// a disagreement throws NumericalAssertion.
EtaSup eta_sup(const CoefficientTriple& c);

/// Grid certificate that eta is strictly decreasing on ]0,N[.
bool eta_strictly_decreasing(const CoefficientTriple& c, std::size_t grid_size = 4096);

/// Bisection root of eta in ]0,N[, to |eta| <= 1e-10 (1 + |eta(N-)|) and bracket
/// width <= 1e-12 N. For the SIS models |eta(N-)| = mu+gamma. Throws
/// NoSignChange unless sup > 0 and eta is certified strictly decreasing.
double eta_root(const CoefficientTriple& c);

/// The boundary set {x : drift = g_i = 0}, for built-ins only: {0} for the
/// deterministic model and {0, N} for both stochastic SIS models.
std::vector<double> boundary_set(const CoefficientTriple& c);

enum class Verdict { Extinct, Persistent, Indeterminate };
const char* to_string(Verdict v) noexcept;

struct Classification {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<double> xi;  // set for Persistent
  double sup_value = 0.0;
  double sup_location = 0.0;
  bool strictly_decreasing = false;
  std::string reason;  // failing certificate for Indeterminate
};

/// |sup| at or below this is treated as zero.
inline constexpr double kSupDeadBand = 1e-12;

/// Extinct iff sup < 0, Persistent(xi) iff sup > 0 and eta strictly
/// decreasing, otherwise Indeterminate with the failing certificate.
Classification classify(const CoefficientTriple& c);
/// Verdict logic on precomputed certificate values (exposed for the dead band).
Classification classify_from(double sup_value, double sup_location, bool strictly_decreasing,
                             const std::optional<double>& xi);

/// One multi-noise sample: one Brownian path per diffusion coefficient, all
/// on the same grid.
using NoiseSet = std::vector<BrownianPath>;

/// Euler-Maruyama for a generic triple from start z, with the same clamp
/// policy as the SIS steppers on [eps N, (1-eps) N].
Trajectory generic_euler_maruyama(const CoefficientTriple& c, const NoiseSet& noise, double z,
                                  double clamp_epsilon = 1e-12);

struct OrderingReport {
  std::size_t samples = 0;
  std::size_t steps = 0;
  std::size_t violations = 0;    // steps with X > Y + 1e-9 N
  double max_excess = 0.0;       // max over all steps of X - Y
  bool bit_identical = true;     // every X equals every Y exactly
};

/// Simulates X (drift of c_low) and Y (drift of c_high) from z on each shared
/// noise sample and counts steps where X exceeds Y. Requires identical
/// diffusion lists (checked on the grid) and f_low - h_low <= f_high - h_high
/// on the grid; otherwise throws DriftOrderViolated.
OrderingReport comparison_harness(const CoefficientTriple& c_low, const CoefficientTriple& c_high,
                                  std::span<const NoiseSet> noise, double z,
                                  std::size_t check_grid = 1024);

}  // namespace sis
