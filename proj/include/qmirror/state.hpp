#pragma once

#include <string>
#include <vector>

#include "qmirror/grid.hpp"

namespace qm {

// Detection history, chronological: history[0] is the first photon's port.
using History = std::string;

// Mirror density matrix rho(x, xi) sampled on a grid. Diagonal states keep
// rho(x, x) only, which is all the detection statistics need; full states
// keep the whole matrix row-major (rho[i * n + j] = rho(x_i, x_j)).
// Conditioned states stay unnormalized: `weight` carries the quadrature trace,
// i.e. the joint probability of the recorded history.
struct MirrorState {
  SpatialGrid grid;
  Representation repr = Representation::diagonal;
  std::vector<double> diag;    // n values when repr == diagonal
  std::vector<complexd> full;  // n*n values when repr == full_matrix
  double weight = 1.0;
  History history;

  int n() const { return grid.n_points; }
  bool is_full() const { return repr == Representation::full_matrix; }
  const complexd& at(int i, int j) const { return full[static_cast<std::size_t>(i) * n() + j]; }
  double diag_at(int i) const {
    return is_full() ? at(i, i).real() : diag[static_cast<std::size_t>(i)];
  }
  // real diagonal as a vector (copy for full states)
  std::vector<double> diagonal() const;
};

// Quadrature trace of the (possibly unnormalized) state.
double state_weight(const MirrorState&);

// Tr[(rho/weight)^2]; requires the full representation.
double purity(const MirrorState&);

// Drop off-diagonal information, keeping grid/weight/history.
MirrorState to_diagonal(const MirrorState&);

// Check the representation invariants (trace ~ weight, hermiticity,
// non-negative diagonal); throws config_error naming the violation.
void validate_state(const MirrorState&);

}  // namespace qm
