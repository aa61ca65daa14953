#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sis/noise.hpp"

namespace sis {

struct Provenance {
  std::string method;
  std::string params_hash;
  std::uint64_t seed = 0;
  double mesh = 0.0;
  unsigned substeps = 0;
};

/// Boundary bookkeeping. Nothing is ever clamped without being counted here.
struct BoundaryDiagnostics {
  double min_state = 0.0;
  double max_state = 0.0;
  std::size_t clamp_count = 0;      // EM/Heun/RK4 exits from [eps N, (1-eps) N]
  std::size_t underflow_count = 0;  // states below the smallest normal double
  std::size_t saturation_count = 0; // states that rounded to N in the back-transform
  std::size_t cap_count = 0;        // log-odds exponent caps
};

/// Knot-indexed state sequence. `log_states`, when non-empty, holds ln(I)
/// at every knot and is the authoritative value where `states` underflowed.
struct Trajectory {
  TimeGrid grid;
  std::vector<double> states;
  std::vector<double> log_states;
  Provenance provenance;
  BoundaryDiagnostics diag;

  double terminal() const { return states.back(); }
  /// ln(I) at knot k, from log_states when available.
  double log_state(std::size_t k) const;
  bool has_log_states() const noexcept { return !log_states.empty(); }
};

/// Recomputes min/max over states (counters are left untouched).
void refresh_extrema(Trajectory& traj);

/// Converts ln(I) to a stored state: floors at the smallest normal double
/// (counting an underflow) and pulls values that round to N back inside.
double store_from_log(double log_state, double N, BoundaryDiagnostics& diag);

/// CSV `t,value` preceded by a `# provenance:` comment line.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Long-format CSV `t,value,traj` for several trajectories; header only if empty.
void write_trajectories_csv(std::ostream& os, std::span<const Trajectory> trajs);

}  // namespace sis
