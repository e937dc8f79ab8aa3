#include "qmirror/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmirror/kernels.hpp"

namespace qm {

SpatialGrid make_grid(double x_min, double x_max, int n_points) {
  if (!(x_max > x_min)) throw config_error("grid: x_max must exceed x_min");
  if (n_points < 2) throw config_error("grid: need at least 2 points");
  return SpatialGrid{x_min, x_max, n_points};
}

SpatialGrid make_grid_for(const InterferometerConfig& config, double envelope_halfwidth,
                          int points_per_fringe, double center, Representation repr,
                          const GridCaps& caps) {
  config.validate();
  if (!(envelope_halfwidth > 0.0)) throw config_error("grid: envelope halfwidth must be > 0");
  if (points_per_fringe < 8) throw config_error("grid: points_per_fringe must be >= 8");

  const double fringe = config.wavelength / (4.0 * config.bounces);
  const double h_target = std::min(fringe, envelope_halfwidth) / points_per_fringe;
  const double span = 8.0 * envelope_halfwidth;

  // Intervals rounded up to a multiple of 8: n odd, so the centre and the
  // halfwidth marks land exactly on grid nodes.
  long intervals = static_cast<long>(std::ceil(span / h_target - 1e-9));
  intervals = (intervals + 7) / 8 * 8;
  const long n = intervals + 1;

  const long cap = caps.cap(repr);
  if (n > cap)
    throw grid_cap_error("grid: " + std::to_string(n) + " points exceed the cap of " +
                         std::to_string(cap) + " for this representation");
  return SpatialGrid{center - 4.0 * envelope_halfwidth, center + 4.0 * envelope_halfwidth,
                     static_cast<int>(n)};
}

double quad_weight(const SpatialGrid& g, int i) {
  const double h = g.spacing();
  return (i == 0 || i == g.n_points - 1) ? 0.5 * h : h;
}

double trapezoid(const SpatialGrid& g, const std::vector<double>& f) {
  if (static_cast<int>(f.size()) != g.n_points)
    throw config_error("trapezoid: sample count does not match the grid");
  return kernels::weighted_sum_omp(g, f.data());
}

}  // namespace qm
