#pragma once

#include <vector>

#include "qmirror/config.hpp"
#include "qmirror/grid.hpp"

namespace qm {

struct Mat2 {
  complexd m00, m01, m10, m11;
};
Mat2 operator*(const Mat2&, const Mat2&);

struct Amp2 {
  complexd left, right;
};
Amp2 apply(const Mat2&, const Amp2&);

// Symmetric splitter S(theta) = [[cos, i sin], [i sin, cos]]; reflection
// probability cos^2(theta). The entry/exit splitter is S(pi/4).
Mat2 splitter_matrix(double theta);

// Phase the mirror at fixed position x imprints on one bounce:
// exp(+i p x) for the left side, exp(-i p x) for the right, p = 2 k cos(eps).
complexd kick_phase(const InterferometerConfig&, double x, Port side);

// One bounce off the delocalized mirror at fixed x.
Mat2 kick_matrix(const InterferometerConfig&, double x);

// Arm phase plate diag(e^{-i phi/2}, e^{+i phi/2}). Convention: all path and
// perfect-mirror phases are absorbed into the single phi carried by the
// propagator after the last bounce; the earlier propagators are identity.
// This choice makes the N=1 chain reproduce the closed-form kernel exactly
// and makes a_right(phi) = a_left(phi - pi) hold with global phase 1.
Mat2 phase_plate(double phi);

// Full chain  B * P(phi) * K(x)^N * B  for one photon at mirror position x.
Mat2 transfer_matrix(const InterferometerConfig&, double x);

// Column of the transfer matrix for the configured entry port.
Amp2 exit_amplitude_at(const InterferometerConfig&, double x);

struct ExitAmplitudes {
  SpatialGrid grid;
  std::vector<complexd> left, right;
};
ExitAmplitudes exit_amplitudes(const InterferometerConfig&, const SpatialGrid&);

// Single-bounce closed-form conditional kernel K_port(x, xi) at normal
// incidence; the left-port form is
//   [sin(t)cos(phi/2) - i cos(t)sin(2kx - phi/2)] *
//   [sin(t)cos(phi/2) + i cos(t)sin(2kxi - phi/2)]
// and the right port is the same with phi -> phi - pi. Requires bounces == 1
// and incidence == 0.
complexd closed_form_kernel_N1(const InterferometerConfig&, double x, double xi, Port port);

}  // namespace qm
