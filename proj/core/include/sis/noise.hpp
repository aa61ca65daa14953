#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <span>
#include <vector>

namespace sis {

/// Uniform partition of [0, t_end] into n_cells cells.
class TimeGrid {
 public:
  /// Throws OutOfRange unless t_end > 0 and n_cells >= 1.
  TimeGrid(double t_end, std::size_t n_cells);

  double t_end() const noexcept { return t_end_; }
  std::size_t n_cells() const noexcept { return n_cells_; }
  std::size_t n_knots() const noexcept { return n_cells_ + 1; }
  double mesh() const noexcept { return t_end_ / static_cast<double>(n_cells_); }
  /// t_k = k * t_end / n_cells; knot(n_cells) == t_end exactly.
  double knot(std::size_t k) const noexcept {
    return static_cast<double>(k) * t_end_ / static_cast<double>(n_cells_);
  }
  TimeGrid refined() const { return TimeGrid(t_end_, 2 * n_cells_); }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t_end_;
  std::size_t n_cells_;
};

/// A Brownian sample at the knots of a uniform grid. Between knots the path
/// is read as its polygonal (piecewise linear) interpolant.
///
/// Randomness is addressed, not streamed: the increment of cell k at level 0
/// and the bridge midpoint of cell k at level L are Philox draws keyed by
/// (seed, level, k). Refining a path therefore yields the same values no
/// matter how or where the refinement is computed.
class BrownianPath {
 public:
  const TimeGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double value(std::size_t k) const noexcept { return values_[k]; }
  std::uint64_t seed() const noexcept { return seed_; }
  unsigned level() const noexcept { return level_; }
  /// Noise component this path belongs to when several drive one equation.
  std::uint32_t component() const noexcept { return component_; }

  /// values[k+1] - values[k]
  double increment(std::size_t k) const noexcept { return values_[k + 1] - values_[k]; }

  friend BrownianPath sample_path(const TimeGrid& grid, std::uint64_t seed,
                                  std::uint32_t component);
  friend BrownianPath refine_bridge(const BrownianPath& path);
  friend BrownianPath path_from_values(const TimeGrid& grid, std::vector<double> values);

 private:
  BrownianPath(TimeGrid grid, std::vector<double> values, std::uint64_t seed, unsigned level,
               std::uint32_t component)
      : grid_(grid), values_(std::move(values)), seed_(seed), level_(level),
        component_(component) {}

  TimeGrid grid_;
  std::vector<double> values_;
  std::uint64_t seed_;
  unsigned level_;
  std::uint32_t component_;
};

/// Independent N(0, dt) increments, cumulated from B(0) = 0. `component`
/// selects an independent stream for multi-noise equations.
BrownianPath sample_path(const TimeGrid& grid, std::uint64_t seed, std::uint32_t component = 0);

/// Doubles the number of cells. Each new midpoint is drawn from the Brownian
/// bridge law: mean of the two endpoints, variance dt/4. Existing knot values
/// are copied bit for bit.
BrownianPath refine_bridge(const BrownianPath& path);

/// Applies refine_bridge `times` times.
BrownianPath refine_bridge(const BrownianPath& path, unsigned times);

/// Wraps explicit knot values (values[0] must be 0, size n_cells+1). Used for
/// synthetic fixtures; seed and level are zero.
BrownianPath path_from_values(const TimeGrid& grid, std::vector<double> values);

/// Polygonal interpolant B^pi(t). Throws OutOfRange for t outside [0, t_end].
double polygonal_eval(const BrownianPath& path, double t);

/// Slope of the polygonal path on cell k. Throws OutOfRange for k >= n_cells.
double cell_slope(const BrownianPath& path, std::size_t k);

/// Restriction of a refined path to every `stride`-th knot.
std::vector<double> restrict_to_stride(std::span<const double> values, std::size_t stride);

/// CSV with header `t,B`.
void write_path_csv(std::ostream& os, const BrownianPath& path);

/// Parses a seed given as decimal or 0x-prefixed hex. Throws ConfigError.
std::uint64_t parse_seed(const std::string& text);

}  // namespace sis
