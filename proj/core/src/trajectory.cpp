#include "sis/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace sis {

double Trajectory::log_state(std::size_t k) const {
  if (!log_states.empty()) return log_states[k];
  return std::log(states[k]);
}

void refresh_extrema(Trajectory& traj) {
  if (traj.states.empty()) return;
  const auto [lo, hi] = std::minmax_element(traj.states.begin(), traj.states.end());
  traj.diag.min_state = *lo;
  traj.diag.max_state = *hi;
}

double store_from_log(double log_state, double N, BoundaryDiagnostics& diag) {
  constexpr double floor = std::numeric_limits<double>::min();
  if (!(log_state > std::log(floor))) {
    ++diag.underflow_count;
    return floor;
  }
  const double x = std::exp(log_state);
  if (x >= N) {
    ++diag.saturation_count;
    return std::nextafter(N, 0.0);
  }
  return x;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const auto& pv = traj.provenance;
  os << "# provenance: method=" << pv.method << " params=" << pv.params_hash
     << " seed=" << pv.seed;
  os.precision(17);
  os << " mesh=" << pv.mesh << " substeps=" << pv.substeps << '\n';
  os << "t,value\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    os << traj.grid.knot(k) << ',' << traj.states[k] << '\n';
  }
}

void write_trajectories_csv(std::ostream& os, std::span<const Trajectory> trajs) {
  os << "t,value,traj\n";
  os.precision(17);
  for (std::size_t j = 0; j < trajs.size(); ++j) {
    const auto& tr = trajs[j];
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
      os << tr.grid.knot(k) << ',' << tr.states[k] << ',' << j << '\n';
    }
  }
}

}  // namespace sis
