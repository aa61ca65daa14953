#include "sis/noise.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "sis/error.hpp"
#include "sis/rng.hpp"

namespace sis {

TimeGrid::TimeGrid(double t_end, std::size_t n_cells) : t_end_(t_end), n_cells_(n_cells) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::OutOfRange, "t_end must be > 0");
  if (n_cells < 1) throw Error(ErrorCode::OutOfRange, "n_cells must be >= 1");
}

BrownianPath sample_path(const TimeGrid& grid, std::uint64_t seed, std::uint32_t component) {
  const double sd = std::sqrt(grid.mesh());
  std::vector<double> values(grid.n_knots());
  values[0] = 0.0;
  for (std::size_t k = 0; k < grid.n_cells(); ++k) {
    values[k + 1] = values[k] + sd * rng::gaussian_at(seed, 2 * component, 0, k);
  }
  return BrownianPath(grid, std::move(values), seed, 0, component);
}

BrownianPath refine_bridge(const BrownianPath& path) {
  const TimeGrid fine = path.grid().refined();
  const double half_sd = 0.5 * std::sqrt(path.grid().mesh());
  const unsigned level = path.level() + 1;
  const auto coarse = path.values();
  std::vector<double> values(fine.n_knots());
  for (std::size_t k = 0; k < path.grid().n_cells(); ++k) {
    values[2 * k] = coarse[k];
    const double mean = 0.5 * (coarse[k] + coarse[k + 1]);
    values[2 * k + 1] =
        mean + half_sd * rng::gaussian_at(path.seed(), 2 * path.component() + 1, level, k);
  }
  values.back() = coarse.back();
  return BrownianPath(fine, std::move(values), path.seed(), level, path.component());
}

BrownianPath refine_bridge(const BrownianPath& path, unsigned times) {
  BrownianPath out = path;
  for (unsigned i = 0; i < times; ++i) out = refine_bridge(out);
  return out;
}

BrownianPath path_from_values(const TimeGrid& grid, std::vector<double> values) {
  if (values.size() != grid.n_knots()) throw Error(ErrorCode::OutOfRange, "values must have n_cells+1 entries");
  if (values[0] != 0.0) throw Error(ErrorCode::OutOfRange, "values[0] must be 0");
  return BrownianPath(grid, std::move(values), 0, 0, 0);
}

double polygonal_eval(const BrownianPath& path, double t) {
  const auto& g = path.grid();
  if (!(t >= 0.0 && t <= g.t_end())) throw Error(ErrorCode::OutOfRange, "t outside [0, t_end]");
  const double pos = t / g.mesh();
  auto k = static_cast<std::size_t>(std::floor(pos));
  if (k >= g.n_cells()) return path.values().back();
  // t/mesh can land an ulp either side of an integer; knots must be exact.
  if (t == g.knot(k + 1)) return path.value(k + 1);
  const double t0 = g.knot(k);
  if (t == t0) return path.value(k);
  const double w = (t - t0) / g.mesh();
  return path.value(k) + w * (path.value(k + 1) - path.value(k));
}

double cell_slope(const BrownianPath& path, std::size_t k) {
  if (k >= path.grid().n_cells()) throw Error(ErrorCode::OutOfRange, "cell index");
  return path.increment(k) / path.grid().mesh();
}

std::vector<double> restrict_to_stride(std::span<const double> values, std::size_t stride) {
  std::vector<double> out;
  out.reserve(values.size() / stride + 1);
  for (std::size_t k = 0; k < values.size(); k += stride) out.push_back(values[k]);
  return out;
}

void write_path_csv(std::ostream& os, const BrownianPath& path) {
  os << "t,B\n";
  os.precision(17);
  for (std::size_t k = 0; k < path.grid().n_knots(); ++k) {
    os << path.grid().knot(k) << ',' << path.value(k) << '\n';
  }
}

std::uint64_t parse_seed(const std::string& text) {
  std::string_view s = text;
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s.remove_prefix(2);
    base = 16;
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::ConfigError, "invalid seed '" + text + "'");
  }
  return value;
}

}  // namespace sis
