#pragma once

#include <span>
#include <vector>

#include "sis/noise.hpp"
#include "sis/params.hpp"
#include "sis/trajectory.hpp"

namespace sis {

/// Closed-form solution of the deterministic SIS equation on the grid knots,
///   I(t) = i0 e^{delta t} / (1 + beta i0 A(t)),  A(t) = (e^{delta t} - 1)/delta,
/// with A(t) = t at delta = 0. Evaluated in log domain; sigma is ignored.
Trajectory deterministic_solution(const SisParams& p, const TimeGrid& grid);

/// Single-point version of deterministic_solution.
double deterministic_value(const SisParams& p, double t);

/// Explicit solution of the Stratonovich model sampled at the path knots:
///   I(t) = i0 E(t) / (1 + (i0/N)(E(t) - 1) + i0 (mu+gamma)/N Q(t)),
///   E(t) = exp(delta t + N sigma B(t)),  Q(t) = ∫_0^t E.
/// Q is a product rule on each cell: e^{delta s} is integrated exactly and
/// e^{N sigma B} is interpolated linearly between knots (second order, and
/// exact when sigma = 0).
Trajectory stratonovich_exact(const SisParams& p, const BrownianPath& path);

/// Solution of the random ODE driven by the polygonal path B^pi. Same
/// formula as stratonovich_exact with E^pi in place of E, but the exponent is
/// affine on every cell, so Q^pi is integrated exactly cell by cell.
Trajectory wong_zakai_exact(const SisParams& p, const BrownianPath& path);

/// Per-cell transmission rate beta + sigma * slope_k induced by a polygonal path.
std::vector<double> wong_zakai_beta(const SisParams& p, const BrownianPath& path);

/// Deterministic SIS with a transmission rate that is constant on each grid
/// cell, evaluated from the variation-of-constants formula
///   I(t) = i0 e^{∫N beta - (mu+gamma) t} / (1 + ∫ beta(s) i0 e^{∫_0^s N beta - (mu+gamma) s} ds)
/// with exact cell integrals, in plain (not log) arithmetic. Throws
/// NumericalAssertion if the exponent overflows.
Trajectory time_varying_deterministic(const SisParams& p, std::span<const double> beta_per_cell,
                                      const TimeGrid& grid);

}  // namespace sis
