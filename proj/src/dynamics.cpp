#include "qmirror/dynamics.hpp"

#include <fftw3.h>

#include <cmath>
#include <exception>
#include <random>
#include <string>

#include "qmirror/errors.hpp"
#include "qmirror/kernels.hpp"

namespace qm {

namespace {

void require_same_grid(const MirrorState& s, const ExitAmplitudes& a) {
  if (!(s.grid == a.grid))
    throw config_error("exit amplitudes were sampled on a different grid than the state");
}

ExitProbabilities exit_probability_diag(const SpatialGrid& g, const ExitAmplitudes& a,
                                        const std::vector<double>& diag, bool serial) {
  const double w = serial ? kernels::weighted_sum_serial(g, diag.data())
                          : kernels::weighted_sum_omp(g, diag.data());
  if (w <= 0.0) throw config_error("exit probabilities of a zero-weight state are undefined");
  const double il = serial ? kernels::intensity_projection_serial(g, a.left.data(), diag.data())
                           : kernels::intensity_projection_omp(g, a.left.data(), diag.data());
  const double ir = serial ? kernels::intensity_projection_serial(g, a.right.data(), diag.data())
                           : kernels::intensity_projection_omp(g, a.right.data(), diag.data());
  return {il / w, ir / w};
}

// One trajectory against precomputed amplitudes, serial kernels throughout so
// batches can parallelize over the trajectory index.
TrajectoryResult run_trajectory(const MirrorState& initial, const ExitAmplitudes& amps,
                                int photons, std::uint64_t seed) {
  if (photons < 0) throw config_error("photon count must be non-negative");
  require_same_grid(initial, amps);

  TrajectoryResult out;
  out.record.seed = seed;
  out.final_state = initial;
  MirrorState& s = out.final_state;

  std::mt19937_64 eng(seed);
  for (int step = 0; step < photons; ++step) {
    const std::vector<double> diag = s.diagonal();
    const ExitProbabilities p = exit_probability_diag(s.grid, amps, diag, /*serial=*/true);
    out.record.step_probabilities.push_back(p);
    // top 53 bits -> uniform in [0, 1); fixed layout on every platform
    const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    const Port port = u < p.left ? Port::left : Port::right;
    const complexd* amp = port == Port::left ? amps.left.data() : amps.right.data();
    const std::size_t n = static_cast<std::size_t>(s.n());
    if (s.is_full())
      kernels::scale_by_kernel_serial(s.full.data(), amp, n);
    else
      kernels::scale_by_intensity_serial(s.diag.data(), amp, n);
    const std::vector<double> updated = s.diagonal();
    s.weight = kernels::weighted_sum_serial(s.grid, updated.data());
    s.history.push_back(to_char(port));
    out.record.outcomes.push_back(to_char(port));
  }
  return out;
}

void fill_history_node(HistoryNode& node, const MirrorState& state, const ExitAmplitudes& amps,
                       int levels) {
  node.history = state.history;
  node.weight = state.weight;
  if (state.weight <= 0.0) {
    node.next = {0.0, 0.0};
    return;
  }
  node.next = exit_probability(state, amps);
  if (levels <= 0) return;
  node.left = std::make_unique<HistoryNode>();
  fill_history_node(*node.left, conditional_update(state, amps, Port::left), amps, levels - 1);
  node.right = std::make_unique<HistoryNode>();
  fill_history_node(*node.right, conditional_update(state, amps, Port::right), amps, levels - 1);
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

ExitProbabilities exit_probability(const MirrorState& s, const InterferometerConfig& c) {
  c.validate();
  return exit_probability(s, exit_amplitudes(c, s.grid));
}

ExitProbabilities exit_probability(const MirrorState& s, const ExitAmplitudes& a) {
  require_same_grid(s, a);
  return exit_probability_diag(s.grid, a, s.diagonal(), /*serial=*/false);
}

MirrorState conditional_update(const MirrorState& s, const InterferometerConfig& c, Port port) {
  c.validate();
  return conditional_update(s, exit_amplitudes(c, s.grid), port);
}

MirrorState conditional_update(const MirrorState& s, const ExitAmplitudes& a, Port port) {
  require_same_grid(s, a);
  MirrorState out = s;
  const complexd* amp = port == Port::left ? a.left.data() : a.right.data();
  const std::size_t n = static_cast<std::size_t>(s.n());
  if (out.is_full())
    kernels::scale_by_kernel_omp(out.full.data(), amp, n);
  else
    kernels::scale_by_intensity_omp(out.diag.data(), amp, n);
  const std::vector<double> diag = out.diagonal();
  out.weight = kernels::weighted_sum_omp(out.grid, diag.data());
  out.history.push_back(to_char(port));
  return out;
}

HistoryTree enumerate_histories(const MirrorState& initial, const InterferometerConfig& c,
                                int depth, int max_depth) {
  c.validate();
  if (depth < 0) throw config_error("history depth must be non-negative");
  if (depth > max_depth)
    throw grid_cap_error("history tree depth " + std::to_string(depth) +
                         " exceeds the cap of " + std::to_string(max_depth) + " levels");
  const ExitAmplitudes amps = exit_amplitudes(c, initial.grid);
  HistoryTree tree;
  tree.depth = depth;
  fill_history_node(tree.root, initial, amps, depth);
  return tree;
}

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(master_seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
}

TrajectoryResult sample_trajectory(const MirrorState& initial, const InterferometerConfig& c,
                                   int photons, std::uint64_t seed) {
  c.validate();
  ExitAmplitudes amps;
  amps.grid = initial.grid;
  amps.left.resize(static_cast<std::size_t>(initial.n()));
  amps.right.resize(static_cast<std::size_t>(initial.n()));
  kernels::amplitude_grid_serial(c, initial.grid, amps.left.data(), amps.right.data());
  return run_trajectory(initial, amps, photons, seed);
}

std::vector<MeasurementRecord> sample_trajectories(const MirrorState& initial,
                                                   const InterferometerConfig& c, int photons,
                                                   int count, std::uint64_t master_seed) {
  c.validate();
  if (count < 0) throw config_error("trajectory count must be non-negative");
  if (photons < 0) throw config_error("photon count must be non-negative");
  const ExitAmplitudes amps = exit_amplitudes(c, initial.grid);
  std::vector<MeasurementRecord> records(static_cast<std::size_t>(count));
  std::exception_ptr failure;  // exceptions must not unwind out of the parallel region
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      records[static_cast<std::size_t>(i)] =
          run_trajectory(initial, amps, photons,
                         trajectory_seed(master_seed, static_cast<std::uint64_t>(i)))
              .record;
    } catch (...) {
#pragma omp critical
      {
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

MirrorState free_evolution(const MirrorState& s, double time, double mass) {
  if (!s.is_full())
    throw representation_error(
        "free evolution needs the full density matrix; the diagonal alone does not determine "
        "how coherences spread");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw config_error("mass must be positive");
  if (!std::isfinite(time)) throw config_error("evolution time must be finite");
  const int n = s.n();
  if (n < 3) throw config_error("free evolution needs at least three grid points");
  if (time == 0.0) return s;

  const SpatialGrid& g = s.grid;
  const double h = g.spacing();
  const double w = state_weight(s);
  if (w <= 0.0) throw config_error("cannot evolve a zero-weight state");

  // Predict where the packet will be: first and second position/momentum
  // moments from the matrix, packet drifts by <p> t / m and can spread by at
  // most sd_p t / m. Refuse runs that would reach the (periodic) boundary.
  double mean_x = 0.0, mom2_x = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = quad_weight(g, i) * s.diag_at(i);
    mean_x += d * g.x(i);
    mom2_x += d * g.x(i) * g.x(i);
  }
  mean_x /= w;
  const double sd_x = std::sqrt(std::max(mom2_x / w - mean_x * mean_x, 0.0));
  double mean_p = 0.0, mom2_p = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    const double wi = quad_weight(g, i);
    mean_p += wi * std::imag(s.at(i + 1, i) - s.at(i - 1, i)) / (2.0 * h);
    mom2_p += wi *
              std::real(s.at(i + 1, i + 1) - s.at(i + 1, i - 1) - s.at(i - 1, i + 1) +
                        s.at(i - 1, i - 1)) /
              (4.0 * h * h);
  }
  mean_p /= w;
  const double sd_p = std::sqrt(std::max(mom2_p / w - mean_p * mean_p, 0.0));
  const double drift = mean_x + mean_p * time / mass;
  const double bound = sd_x + sd_p * std::abs(time) / mass;
  if (drift - 4.0 * bound < g.x_min || drift + 4.0 * bound > g.x_max)
    throw config_error("free evolution would carry the packet to the grid boundary; enlarge "
                       "the grid or shorten the time");

  // Momentum-space phases of the periodic evolution operator U = B D F / n
  // with D_k = exp(-i p_k^2 t / (2 m)). The state advances as U rho U^dag:
  // a row pass (backward FFT, conj(D)/n, forward FFT) applies U^dag from the
  // right, then a column pass (forward FFT, D/n, backward FFT) applies U.
  std::vector<complexd> row_phase(static_cast<std::size_t>(n));
  std::vector<complexd> col_phase(static_cast<std::size_t>(n));
  const double dp = 2.0 * std::numbers::pi / (n * h);
  for (int k = 0; k < n; ++k) {
    const double f = k <= n / 2 ? k : k - n;
    const double p = dp * f;
    const complexd d = std::polar(1.0, -p * p * time / (2.0 * mass));
    col_phase[static_cast<std::size_t>(k)] = d / static_cast<double>(n);
    row_phase[static_cast<std::size_t>(k)] = std::conj(d) / static_cast<double>(n);
  }

  MirrorState out = s;
  fftw_complex* data = reinterpret_cast<fftw_complex*>(out.full.data());
  const int dims[1] = {n};
  fftw_plan rows_b = fftw_plan_many_dft(1, dims, n, data, nullptr, 1, n, data, nullptr, 1, n,
                                        FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_plan rows_f = fftw_plan_many_dft(1, dims, n, data, nullptr, 1, n, data, nullptr, 1, n,
                                        FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_plan cols_f = fftw_plan_many_dft(1, dims, n, data, nullptr, n, 1, data, nullptr, n, 1,
                                        FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_plan cols_b = fftw_plan_many_dft(1, dims, n, data, nullptr, n, 1, data, nullptr, n, 1,
                                        FFTW_BACKWARD, FFTW_ESTIMATE);

  fftw_execute(rows_b);
  for (int i = 0; i < n; ++i) {
    complexd* row = out.full.data() + static_cast<std::size_t>(i) * n;
    for (int k = 0; k < n; ++k) row[k] *= row_phase[static_cast<std::size_t>(k)];
  }
  fftw_execute(rows_f);

  fftw_execute(cols_f);
  for (int k = 0; k < n; ++k) {
    complexd* row = out.full.data() + static_cast<std::size_t>(k) * n;
    for (int j = 0; j < n; ++j) row[j] *= col_phase[static_cast<std::size_t>(k)];
  }
  fftw_execute(cols_b);

  fftw_destroy_plan(rows_b);
  fftw_destroy_plan(rows_f);
  fftw_destroy_plan(cols_f);
  fftw_destroy_plan(cols_b);
  return out;
}

double min_photon_delay(const DelayParams& p) {
  if (!(p.coherence_time > 0.0) || !std::isfinite(p.coherence_time))
    throw config_error("coherence time must be positive");
  if (!(p.mirror_distance > 0.0) || !std::isfinite(p.mirror_distance))
    throw config_error("mirror distance must be positive");
  if (p.bounces < 1) throw config_error("bounce count must be at least 1");
  return p.coherence_time + p.mirror_distance * (p.bounces - 1) / speed_of_light;
}

}  // namespace qm
