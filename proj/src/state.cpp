#include "qmirror/state.hpp"

#include <cmath>
#include <string>

#include "qmirror/errors.hpp"
#include "qmirror/kernels.hpp"

namespace qm {

std::vector<double> MirrorState::diagonal() const {
  if (!is_full()) return diag;
  const int m = n();
  std::vector<double> d(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) d[static_cast<std::size_t>(i)] = at(i, i).real();
  return d;
}

double state_weight(const MirrorState& s) {
  const std::vector<double> d = s.diagonal();
  return kernels::weighted_sum_omp(s.grid, d.data());
}

double purity(const MirrorState& s) {
  if (!s.is_full())
    throw representation_error(
        "purity requires the full density-matrix representation; the diagonal alone does not "
        "determine it");
  const double w = state_weight(s);
  if (w <= 0.0) throw config_error("purity of a zero-weight state is undefined");
  return kernels::hs_norm_sq_omp(s.grid, s.full.data()) / (w * w);
}

MirrorState to_diagonal(const MirrorState& s) {
  if (!s.is_full()) return s;
  MirrorState out;
  out.grid = s.grid;
  out.repr = Representation::diagonal;
  out.diag = s.diagonal();
  out.weight = s.weight;
  out.history = s.history;
  return out;
}

void validate_state(const MirrorState& s) {
  const std::size_t m = static_cast<std::size_t>(s.grid.n_points);
  if (s.is_full()) {
    if (s.full.size() != m * m)
      throw config_error("density matrix storage does not match the grid size");
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const complexd a = s.full[i * m + j];
        const complexd b = std::conj(s.full[j * m + i]);
        if (std::abs(a - b) > tol_herm)
          throw config_error("density matrix is not Hermitian within tolerance at entry (" +
                             std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (s.full[i * m + i].real() < -tol_neg)
        throw config_error("density matrix has a negative diagonal entry at index " +
                           std::to_string(i));
    }
  } else {
    if (s.diag.size() != m)
      throw config_error("diagonal storage does not match the grid size");
    for (std::size_t i = 0; i < m; ++i)
      if (s.diag[i] < -tol_neg)
        throw config_error("position density is negative at index " + std::to_string(i));
  }
  const double w = state_weight(s);
  if (std::abs(w - s.weight) > tol_norm * std::max(1.0, std::abs(s.weight)))
    throw config_error("stored weight " + std::to_string(s.weight) +
                       " disagrees with the quadrature trace " + std::to_string(w));
}

}  // namespace qm
