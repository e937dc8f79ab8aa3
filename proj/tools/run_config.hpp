#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmirror/config.hpp"
#include "qmirror/grid.hpp"
#include "qmirror/states.hpp"

namespace qmtool {

// Everything the CLI can configure, filled from `key = value` lines. Lengths
// are in units of the mirror spread except the delay block (SI).
struct RunConfig {
  qm::InterferometerConfig optics;
  qm::StateSpec state;

  // grid
  int points_per_fringe = 16;
  double grid_halfwidth = 0.0;  // 0 = automatic from the state envelope
  qm::Representation representation = qm::Representation::diagonal;

  // run
  int depth = 4;
  int trajectories = 1000;
  int photons = 3;
  std::uint64_t seed = 12345;

  // output
  std::string output_path;  // empty = stdout
  std::string format = "csv";

  // surface sheet
  double lambda_min = 2.0, lambda_max = 20.0;
  int lambda_count = 19;
  double phi_min = 0.0, phi_max = 6.283185307179586;
  int phi_count = 33;
  std::vector<std::string> surface_histories{"L", "LL"};

  // entrainment sweep
  std::vector<double> r_values{0.6, 0.7, 0.8, 0.9, 1.0};
  int entrain_depth = 4;
  int entrain_phi_samples = 8;
  double entrain_phi_halfspan = 0.39269908169872414;  // pi / 8

  // fringe extraction
  std::vector<std::string> fringe_histories{"L"};

  // photon delay bound (SI units)
  double delay_coherence_time = 1e-13;
  double delay_mirror_distance = 0.3;

  // grid halfwidth actually used: explicit value, or sized from the state
  // (flat states keep their support edges exactly on grid nodes)
  double effective_halfwidth() const;
};

// Parse one `key = value` assignment; throws qm::config_error on unknown keys
// or malformed values.
void apply_key(RunConfig&, const std::string& key, const std::string& value);

// Load a config file: one assignment per line, `#` comments, blank lines ok.
RunConfig load_run_config(const std::string& path);

}  // namespace qmtool
