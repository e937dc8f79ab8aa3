#pragma once

#include <cstddef>

#include "qmirror/config.hpp"
#include "qmirror/grid.hpp"

namespace qm::kernels {

// Hot loops, each as a serial reference and an OpenMP variant. Every pair is
// bitwise-identical by construction: element-wise kernels write disjoint
// slots, and reductions accumulate fixed-size blocks whose partials are
// combined in index order, so results never depend on the thread count.

inline constexpr std::size_t reduction_block = 4096;

// exit amplitudes (a_left, a_right) at every grid point
void amplitude_grid_serial(const InterferometerConfig&, const SpatialGrid&,
                           complexd* a_left, complexd* a_right);
void amplitude_grid_omp(const InterferometerConfig&, const SpatialGrid&,
                        complexd* a_left, complexd* a_right);

// diag[i] *= |amp[i]|^2
void scale_by_intensity_serial(double* diag, const complexd* amp, std::size_t n);
void scale_by_intensity_omp(double* diag, const complexd* amp, std::size_t n);

// rho[i*n + j] *= amp[i] * conj(amp[j])
void scale_by_kernel_serial(complexd* rho, const complexd* amp, std::size_t n);
void scale_by_kernel_omp(complexd* rho, const complexd* amp, std::size_t n);

// trapezoid sum  sum_i w_i diag[i]
double weighted_sum_serial(const SpatialGrid&, const double* diag);
double weighted_sum_omp(const SpatialGrid&, const double* diag);

// trapezoid sum  sum_i w_i |amp[i]|^2 diag[i]
double intensity_projection_serial(const SpatialGrid&, const complexd* amp, const double* diag);
double intensity_projection_omp(const SpatialGrid&, const complexd* amp, const double* diag);

// Hilbert-Schmidt square  sum_ij w_i w_j |rho[i*n+j]|^2
double hs_norm_sq_serial(const SpatialGrid&, const complexd* rho);
double hs_norm_sq_omp(const SpatialGrid&, const complexd* rho);

}  // namespace qm::kernels
