#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qmirror/optics.hpp"
#include "qmirror/state.hpp"

namespace qm {

struct ExitProbabilities {
  double left = 0.0;
  double right = 0.0;
  double port(Port p) const { return p == Port::left ? left : right; }
};

// Probability of the next photon exiting each port given the current mirror
// state; left + right = 1 up to quadrature roundoff. Errors on zero weight.
ExitProbabilities exit_probability(const MirrorState&, const InterferometerConfig&);
ExitProbabilities exit_probability(const MirrorState&, const ExitAmplitudes&);

// Unnormalized conditioning on a detection: diagonal entries pick up
// |a_port(x)|^2, full entries a_port(x) conj(a_port(xi)); the new weight is
// the joint probability of the extended history.
MirrorState conditional_update(const MirrorState&, const InterferometerConfig&, Port);
MirrorState conditional_update(const MirrorState&, const ExitAmplitudes&, Port);

struct HistoryNode {
  History history;
  double weight = 0.0;      // joint probability p_H of this history
  ExitProbabilities next;   // conditional exit probabilities for the next photon
  std::unique_ptr<HistoryNode> left, right;
};

struct HistoryTree {
  HistoryNode root;  // history "" with weight equal to the initial state's
  int depth = 0;
};

// Full binary history tree to the given depth. Zero-weight branches are kept
// as leaves but not expanded. Depth is capped (default 16 levels).
HistoryTree enumerate_histories(const MirrorState& initial, const InterferometerConfig&,
                                int depth, int max_depth = 16);

struct MeasurementRecord {
  std::uint64_t seed = 0;
  History outcomes;
  std::vector<ExitProbabilities> step_probabilities;  // before each detection
};

struct TrajectoryResult {
  MeasurementRecord record;
  MirrorState final_state;  // conditioned, weight = p_H of the drawn history
};

// Seed for one trajectory of a batch, mixed from (master seed, index) so the
// stream never depends on execution order or thread count.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index);

TrajectoryResult sample_trajectory(const MirrorState& initial, const InterferometerConfig&,
                                   int photons, std::uint64_t seed);

// Batch of independently seeded trajectories, parallel over the batch index;
// records come back in index order regardless of scheduling.
std::vector<MeasurementRecord> sample_trajectories(const MirrorState& initial,
                                                   const InterferometerConfig&, int photons,
                                                   int count, std::uint64_t master_seed);

// Free evolution of the full-matrix state over `time` for a mirror of `mass`
// (hbar = 1): both sides propagated with exp(-/+ i p^2 t / (2 mass)) in the
// momentum representation via the periodic DFT. Checks that the packet stays
// at least 4 predicted widths from the grid boundary.
MirrorState free_evolution(const MirrorState&, double time, double mass = 1e4);

// Minimum inter-photon delay (seconds) so consecutive photons never overlap
// inside the instrument: coherence_time + distance * (bounces - 1) / c.
double min_photon_delay(const DelayParams&);

}  // namespace qm
