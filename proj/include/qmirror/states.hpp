#pragma once

#include "qmirror/state.hpp"

namespace qm {

enum class StateKind { gaussian, thermal, top_hat };

// Initial mirror state description. sigma follows the density convention
// rho(x, x) = exp(-(x - center)^2 / sigma^2) / (sigma sqrt(pi)).
struct StateSpec {
  StateKind kind = StateKind::gaussian;
  double sigma = 1.0;
  double center = 0.0;
  double momentum = 0.0;          // initial boost p0 (pure gaussian)
  double coherence_length = 0.0;  // off-diagonal decay length (thermal)
  double width = 0.0;             // support width (top hat)

  void validate() const;
  // halfwidth the grid span is sized from: sigma, or width/2 for a top hat
  double envelope_halfwidth() const;
};

// Pure wave packet psi = (pi sigma^2)^(-1/4) exp(-(x-x0)^2/(2 sigma^2) + i p0 x),
// returned as the full matrix psi(x) conj(psi(xi)). Grid must span
// [x0 - 4 sigma, x0 + 4 sigma].
MirrorState gaussian_pure(const SpatialGrid&, const StateSpec&);

// Gaussian-envelope thermal state
//   rho(x, xi) ~ exp(-((x-x0)^2 + (xi-x0)^2)/(2 sigma^2)) exp(-(x-xi)^2/(2 l_c^2)),
// same diagonal as the pure packet, coherence decaying over l_c. Needs the
// grid to resolve l_c (h <= l_c / 4).
MirrorState thermal_gaussian(const SpatialGrid&, const StateSpec&);

// Fully mixed flat state: diagonal 1/width on the support, half value on edge
// nodes (trapezoid-consistent jump sampling), zero outside.
MirrorState top_hat(const SpatialGrid&, const StateSpec&);

// Build the state in the requested representation; the diagonal route
// evaluates the same envelope directly.
MirrorState make_state(const SpatialGrid&, const StateSpec&, Representation);

}  // namespace qm
