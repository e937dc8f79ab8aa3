#include "qmirror/kernels.hpp"

#include <algorithm>
#include <vector>

#include "qmirror/optics.hpp"

namespace qm::kernels {

namespace {

inline std::size_t block_count(std::size_t n) {
  return (n + reduction_block - 1) / reduction_block;
}

// Per-element and per-block bodies shared by both variants of each kernel so
// the serial and OpenMP paths run the exact same arithmetic.

inline void amplitude_point(const InterferometerConfig& c, const SpatialGrid& g, int i,
                            complexd* a_left, complexd* a_right) {
  const Amp2 a = exit_amplitude_at(c, g.x(i));
  a_left[i] = a.left;
  a_right[i] = a.right;
}

inline double weighted_block(const SpatialGrid& g, const double* diag, std::size_t begin,
                             std::size_t end) {
  double acc = 0.0;
  for (std::size_t i = begin; i < end; ++i)
    acc += quad_weight(g, static_cast<int>(i)) * diag[i];
  return acc;
}

inline double projection_block(const SpatialGrid& g, const complexd* amp, const double* diag,
                               std::size_t begin, std::size_t end) {
  double acc = 0.0;
  for (std::size_t i = begin; i < end; ++i)
    acc += quad_weight(g, static_cast<int>(i)) * std::norm(amp[i]) * diag[i];
  return acc;
}

inline void kernel_row(complexd* rho, const complexd* amp, std::size_t n, std::size_t i) {
  const complexd ai = amp[i];
  complexd* row = rho + i * n;
  for (std::size_t j = 0; j < n; ++j) row[j] *= ai * std::conj(amp[j]);
}

inline double hs_row(const SpatialGrid& g, const complexd* rho, std::size_t n, std::size_t i) {
  const complexd* row = rho + i * n;
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    acc += quad_weight(g, static_cast<int>(j)) * std::norm(row[j]);
  return quad_weight(g, static_cast<int>(i)) * acc;
}

inline double combine(const std::vector<double>& partials) {
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

}  // namespace

void amplitude_grid_serial(const InterferometerConfig& c, const SpatialGrid& g,
                           complexd* a_left, complexd* a_right) {
  for (int i = 0; i < g.n_points; ++i) amplitude_point(c, g, i, a_left, a_right);
}

void amplitude_grid_omp(const InterferometerConfig& c, const SpatialGrid& g,
                        complexd* a_left, complexd* a_right) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < g.n_points; ++i) amplitude_point(c, g, i, a_left, a_right);
}

void scale_by_intensity_serial(double* diag, const complexd* amp, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) diag[i] *= std::norm(amp[i]);
}

void scale_by_intensity_omp(double* diag, const complexd* amp, std::size_t n) {
  const long ln = static_cast<long>(n);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < ln; ++i) diag[i] *= std::norm(amp[i]);
}

void scale_by_kernel_serial(complexd* rho, const complexd* amp, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) kernel_row(rho, amp, n, i);
}

void scale_by_kernel_omp(complexd* rho, const complexd* amp, std::size_t n) {
  const long ln = static_cast<long>(n);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < ln; ++i) kernel_row(rho, amp, n, static_cast<std::size_t>(i));
}

double weighted_sum_serial(const SpatialGrid& g, const double* diag) {
  const std::size_t n = static_cast<std::size_t>(g.n_points);
  double total = 0.0;
  for (std::size_t b = 0; b < n; b += reduction_block)
    total += weighted_block(g, diag, b, std::min(b + reduction_block, n));
  return total;
}

double weighted_sum_omp(const SpatialGrid& g, const double* diag) {
  const std::size_t n = static_cast<std::size_t>(g.n_points);
  const long nb = static_cast<long>(block_count(n));
  std::vector<double> partials(static_cast<std::size_t>(nb));
#pragma omp parallel for schedule(static)
  for (long b = 0; b < nb; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * reduction_block;
    partials[static_cast<std::size_t>(b)] =
        weighted_block(g, diag, begin, std::min(begin + reduction_block, n));
  }
  return combine(partials);
}

double intensity_projection_serial(const SpatialGrid& g, const complexd* amp,
                                   const double* diag) {
  const std::size_t n = static_cast<std::size_t>(g.n_points);
  double total = 0.0;
  for (std::size_t b = 0; b < n; b += reduction_block)
    total += projection_block(g, amp, diag, b, std::min(b + reduction_block, n));
  return total;
}

double intensity_projection_omp(const SpatialGrid& g, const complexd* amp, const double* diag) {
  const std::size_t n = static_cast<std::size_t>(g.n_points);
  const long nb = static_cast<long>(block_count(n));
  std::vector<double> partials(static_cast<std::size_t>(nb));
#pragma omp parallel for schedule(static)
  for (long b = 0; b < nb; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * reduction_block;
    partials[static_cast<std::size_t>(b)] =
        projection_block(g, amp, diag, begin, std::min(begin + reduction_block, n));
  }
  return combine(partials);
}

double hs_norm_sq_serial(const SpatialGrid& g, const complexd* rho) {
  const std::size_t n = static_cast<std::size_t>(g.n_points);
  std::vector<double> partials(n);
  for (std::size_t i = 0; i < n; ++i) partials[i] = hs_row(g, rho, n, i);
  return combine(partials);
}

double hs_norm_sq_omp(const SpatialGrid& g, const complexd* rho) {
  const std::size_t n = static_cast<std::size_t>(g.n_points);
  std::vector<double> partials(n);
  const long ln = static_cast<long>(n);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < ln; ++i)
    partials[static_cast<std::size_t>(i)] = hs_row(g, rho, n, static_cast<std::size_t>(i));
  return combine(partials);
}

}  // namespace qm::kernels
