#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "qmirror/errors.hpp"

namespace qm {

using complexd = std::complex<double>;

// Validation tolerances shared across modules.
inline constexpr double tol_norm = 1e-9;   // trace / weight conservation
inline constexpr double tol_herm = 1e-10;  // hermiticity of full matrices
inline constexpr double tol_neg = 1e-10;   // allowed negativity on diagonals

enum class Port : char { left = 'L', right = 'R' };

inline char to_char(Port p) { return static_cast<char>(p); }
Port port_from_char(char c);  // throws config_error on anything but L/R
inline Port other(Port p) { return p == Port::left ? Port::right : Port::left; }

// Interferometer settings. All lengths are dimensionless, expressed in the
// same unit as the spatial grid (the reference mirror spread sets the scale);
// hbar = 1 throughout. Only min_photon_delay works in SI units.
struct InterferometerConfig {
  double wavelength = 1.0;    // photon wavelength lambda
  double phase = 0.0;         // accumulated arm phase offset phi, radians
  double reflectivity = 1.0;  // intensity reflectivity r of the central mirror
  int bounces = 1;            // bounces N off the central mirror per photon
  double incidence = 0.0;     // incidence angle epsilon, radians
  Port entry = Port::left;    // entry port of each photon

  double wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }
  // mixing angle of the central mirror: reflection probability cos^2(theta)
  double splitter_angle() const { return std::acos(std::sqrt(reflectivity)); }
  // momentum transferred to the mirror per bounce: 2 k cos(epsilon)
  double kick_momentum() const { return 2.0 * wavenumber() * std::cos(incidence); }

  void validate() const;  // throws config_error
};

// Inputs for the minimum inter-photon delay bound (SI units).
struct DelayParams {
  double coherence_time = 1e-13;  // photon coherence time, seconds
  double mirror_distance = 0.3;   // splitter-to-mirror distance D, metres
  int bounces = 1;                // N
};

inline constexpr double speed_of_light = 299792458.0;  // m/s

}  // namespace qm
