#pragma once

#include <optional>
#include <vector>

#include "qmirror/dynamics.hpp"
#include "qmirror/states.hpp"

namespace qm {

// Inclusive axis lambda_min..lambda_max with `count` samples.
struct AxisSpec {
  double min = 0.0;
  double max = 1.0;
  int count = 1;
  double at(int i) const { return count < 2 ? min : min + (max - min) * i / (count - 1); }
};

// Conditional intensities over a (lambda, phi) sheet. Each requested history
// string is read chronologically and reports the probability of its LAST
// character given the preceding prefix: "L" -> first photon left, "LL" ->
// second photon left after one left detection, and so on.
struct IntensitySurface {
  std::vector<double> lambda_axis, phi_axis;
  std::vector<History> histories;
  std::vector<double> values;  // [history][lambda][phi], flattened
  double at(std::size_t h, std::size_t il, std::size_t ip) const {
    return values[(h * lambda_axis.size() + il) * phi_axis.size() + ip];
  }
};

// The initial state's grid must already resolve the finest requested
// wavelength (checked; the CLI sizes the grid from lambda_min).
IntensitySurface intensity_surface(const MirrorState& initial, InterferometerConfig base,
                                   const AxisSpec& lambda, const AxisSpec& phi,
                                   const std::vector<History>& histories);

// Fringe contrast (max - min) / (max + min) of sampled intensities; needs at
// least 8 samples covering a full phase period.
double visibility(const std::vector<double>& samples);

// I_port(phi) of the initial state sampled at `samples` points over [0, 2pi).
std::vector<double> intensity_phi_scan(const MirrorState& initial, InterferometerConfig base,
                                       int samples, Port port = Port::left);

struct FringeReport {
  std::optional<double> period;  // absent when fewer than 4 zero crossings
  double visibility = 0.0;       // contrast of the masked modulation ratio
  int zero_crossings = 0;
};

// Fringe structure of a conditioned diagonal against its reference envelope:
// mask where the reference exceeds floor_fraction * peak, demean the ratio,
// count interpolated zero crossings, period = 2 * mean crossing distance.
FringeReport fringe_period(const MirrorState& conditioned, const MirrorState& reference,
                           double floor_fraction = 1e-6);

struct WashoutOptions {
  // Contrast at which fringes count as visible. 0.02 reproduces the
  // figure-anchored onset thresholds (~6 sigma per bounce for a gaussian).
  double visibility_threshold = 0.02;
  double lambda_tol = 0.01;  // relative bisection tolerance on lambda*
  int phi_samples = 16;
  int points_per_fringe = 16;
  double lambda_hi = 0.0;  // upper search bound; 0 = auto (40 N halfwidths)
};

struct WashoutResult {
  double lambda_star = 0.0;   // smallest lambda with visible fringes
  double form_factor = 0.0;   // lambda* / (char_width * 4 N * c0), top hat = 1
};

// Smallest wavelength at which the phi-scan visibility of I_L still reaches
// the threshold, located by downward scan + bisection (monotone through the
// main lobe; top-hat side lobes below threshold are ignored).
WashoutResult washout_threshold(const StateSpec&, const InterferometerConfig& base,
                                const WashoutOptions& = {});

struct EntrainmentRow {
  double reflectivity = 0.0;
  double i_l = 0.0;                  // unconditioned first-photon left intensity
  std::vector<double> follow;        // I_{L,L}, I_{L,LL}, ... (depth - 1 entries)
  double phi_band_halfwidth = 0.0;   // max spread of the follow columns over the phi scan
};

// Follow probabilities along the all-left spine per reflectivity, with the
// spread over a small phi scan around the operating point as an uncertainty
// band.
std::vector<EntrainmentRow> entrainment_curve(const MirrorState& initial,
                                              InterferometerConfig base,
                                              const std::vector<double>& r_values,
                                              int depth = 4, int phi_samples = 8,
                                              double phi_halfspan = 0.39269908169872414);

}  // namespace qm
