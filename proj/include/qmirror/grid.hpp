#pragma once

#include <vector>

#include "qmirror/config.hpp"

namespace qm {

enum class Representation { diagonal, full_matrix };

// Uniform 1-D position grid, both endpoints included.
struct SpatialGrid {
  double x_min = -1.0;
  double x_max = 1.0;
  int n_points = 2;

  double spacing() const { return (x_max - x_min) / (n_points - 1); }
  double x(int i) const { return x_min + spacing() * i; }
  bool operator==(const SpatialGrid&) const = default;
};

SpatialGrid make_grid(double x_min, double x_max, int n_points);

struct GridCaps {
  long diagonal = 2'000'000;
  long full_matrix = 8'000;
  long cap(Representation r) const {
    return r == Representation::diagonal ? diagonal : full_matrix;
  }
};

// Sizing helper. Spacing resolves both the finest fringe lambda/(4N) and the
// state envelope with `points_per_fringe` samples each; the span covers
// [-4, +4] envelope halfwidths around `center`. n_points - 1 is rounded up to
// a multiple of 8 so the centre and the halfwidth marks land on grid nodes.
// Throws grid_cap_error when the resulting n_points exceeds the cap for the
// requested representation.
SpatialGrid make_grid_for(const InterferometerConfig& config, double envelope_halfwidth,
                          int points_per_fringe = 16, double center = 0.0,
                          Representation repr = Representation::diagonal,
                          const GridCaps& caps = {});

// Trapezoid quadrature on the uniform grid: weight h inside, h/2 at the ends.
double quad_weight(const SpatialGrid& g, int i);
double trapezoid(const SpatialGrid& g, const std::vector<double>& f);

}  // namespace qm
