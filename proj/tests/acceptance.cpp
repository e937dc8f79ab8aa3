// Acceptance gate: one check per headline requirement, each printed as a
// single [PASS]/[FAIL] line with the measured numbers. The process exit code
// is the number of failed criteria. All tolerances are pinned here as
// constants; reference values come from the independent quadrature/closed-form
// oracles, never from the library under test.
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "qmirror/analysis.hpp"
#include "qmirror/dynamics.hpp"
#include "qmirror/errors.hpp"
#include "qmirror/states.hpp"

namespace {

using qm::complexd;
using qm::InterferometerConfig;
using qm::MirrorState;
using qm::Port;

int failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", index, name,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void run(int index, const char* name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
    pass = false;
  }
  report(index, name, pass, detail);
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

MirrorState gaussian_diag(const InterferometerConfig& c, double sigma, double center,
                          int points_per_fringe) {
  qm::StateSpec spec;
  spec.sigma = sigma;
  spec.center = center;
  const qm::SpatialGrid grid =
      qm::make_grid_for(c, 1.25 * sigma, points_per_fringe, center);
  return qm::make_state(grid, spec, qm::Representation::diagonal);
}

MirrorState diag_state(const InterferometerConfig& c, const qm::StateSpec& spec,
                       int points_per_fringe) {
  const qm::SpatialGrid grid =
      qm::make_grid_for(c, 1.25 * spec.sigma, points_per_fringe, spec.center);
  return qm::make_state(grid, spec, qm::Representation::diagonal);
}

// Follow probabilities P(L | n previous L) for n = 0..depth-1 along the
// all-left spine, evaluated by the library.
std::vector<double> follow_chain(const MirrorState& initial, const InterferometerConfig& c,
                                 int depth) {
  const qm::ExitAmplitudes amps = qm::exit_amplitudes(c, initial.grid);
  std::vector<double> probs;
  MirrorState s = initial;
  for (int n = 0; n < depth; ++n) {
    probs.push_back(qm::exit_probability(s, amps).left);
    s = qm::conditional_update(s, amps, Port::left);
  }
  return probs;
}

// Independent reference for the same chain: ratio of gaussian-weighted
// sin-power moments, by composite Simpson quadrature.
double follow_quadrature(int previous_left, double lambda, double sigma) {
  const double k = 2.0 * oracle::pi / lambda;
  auto moment = [&](int n) {
    return oracle::simpson(
        [&](double x) {
          return oracle::gaussian_density(x, sigma) *
                 std::pow(std::sin(2.0 * k * x), 2.0 * n);
        },
        -6.0 * sigma, 6.0 * sigma, 1 << 17);
  };
  return moment(previous_left + 1) / moment(previous_left);
}

double sum_leaf_weights(const qm::HistoryNode& node) {
  if (!node.left && !node.right) return node.weight;
  double s = 0.0;
  if (node.left) s += sum_leaf_weights(*node.left);
  if (node.right) s += sum_leaf_weights(*node.right);
  return s;
}

// --------------------------------------------------------------------------

bool criterion_closed_form(std::string& detail) {
  constexpr double tol = 1e-12;
  std::mt19937_64 rng(20250814);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst_lib = 0.0, worst_oracle = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    InterferometerConfig c;
    c.wavelength = 0.2 + 5.0 * u01(rng);
    c.reflectivity = u01(rng);
    c.phase = 2.0 * oracle::pi * u01(rng);
    c.bounces = 1;
    const double x = 6.0 * u01(rng) - 3.0;
    const double xi = 6.0 * u01(rng) - 3.0;
    const qm::Amp2 ax = qm::exit_amplitude_at(c, x);
    const qm::Amp2 axi = qm::exit_amplitude_at(c, xi);
    for (Port port : {Port::left, Port::right}) {
      const complexd chain = (port == Port::left ? ax.left * std::conj(axi.left)
                                                 : ax.right * std::conj(axi.right));
      const complexd closed = qm::closed_form_kernel_N1(c, x, xi, port);
      worst_lib = std::max(worst_lib, std::abs(chain - closed));
      const double phi_eff = port == Port::left ? c.phase : c.phase - oracle::pi;
      const complexd reference =
          oracle::kernel_left_n1(c.reflectivity, phi_eff, c.wavelength, x, xi);
      worst_oracle = std::max(worst_oracle, std::abs(closed - reference));
    }
  }
  detail = "max |chain - closed form| = " + num(worst_lib) +
           ", max |closed form - quadrature-free oracle| = " + num(worst_oracle) +
           ", tol " + num(tol);
  return worst_lib <= tol && worst_oracle <= tol;
}

bool criterion_normalization(std::string& detail) {
  constexpr double tol = 1e-12;
  std::mt19937_64 rng(77001);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    InterferometerConfig c;
    c.wavelength = 0.2 + 5.0 * u01(rng);
    c.reflectivity = u01(rng);
    c.phase = 2.0 * oracle::pi * u01(rng);
    c.bounces = 1 + static_cast<int>(4.0 * u01(rng));
    c.incidence = 1.2 * u01(rng);
    const double x = 6.0 * u01(rng) - 3.0;
    const qm::Amp2 a = qm::exit_amplitude_at(c, x);
    worst = std::max(worst, std::abs(std::norm(a.left) + std::norm(a.right) - 1.0));
  }
  detail = "max ||A_L|^2 + |A_R|^2 - 1| = " + num(worst) + ", tol " + num(tol);
  return worst <= tol;
}

bool criterion_entrainment_sequence(std::string& detail) {
  constexpr double tol_closed = 2e-3;
  constexpr double tol_quadrature = 1e-6;
  InterferometerConfig c;
  c.wavelength = 0.1;
  const MirrorState initial = gaussian_diag(c, 1.0, 0.0, 16);
  const std::vector<double> probs = follow_chain(initial, c, 4);
  bool ok = true;
  detail = "follow =";
  for (int n = 1; n <= 3; ++n) {
    const double lib = probs[static_cast<std::size_t>(n)];
    detail += " " + num(lib);
    ok = ok && std::abs(lib - oracle::follow_probability(n)) <= tol_closed;
    ok = ok && std::abs(lib - follow_quadrature(n, c.wavelength, 1.0)) <= tol_quadrature;
  }
  detail += " vs 0.75 0.8333 0.875, tol " + num(tol_closed) + " (quadrature tol " +
            num(tol_quadrature) + ")";
  return ok;
}

bool criterion_flat_first_photon(std::string& detail) {
  constexpr double tol = 0.01;
  InterferometerConfig c;
  c.wavelength = 0.5;
  const MirrorState initial = gaussian_diag(c, 1.0, 0.0, 16);
  const std::vector<double> scan = qm::intensity_phi_scan(initial, c, 32);
  double worst = 0.0;
  for (double v : scan) worst = std::max(worst, std::abs(v - 0.5));
  detail = "max |I_L(phi) - 0.5| = " + num(worst) + " over 32 phases at lambda = 0.5 sigma, tol " +
           num(tol);
  return worst <= tol;
}

bool criterion_washout_thresholds(std::string& detail) {
  qm::StateSpec spec;  // gaussian, sigma 1
  InterferometerConfig base;
  base.bounces = 1;
  const double l1 = qm::washout_threshold(spec, base).lambda_star;
  base.bounces = 3;
  const double l3 = qm::washout_threshold(spec, base).lambda_star;
  const double ratio = l3 / l1;
  const bool ok = std::abs(l1 - 6.0) <= 0.30 * 6.0 && std::abs(l3 - 18.0) <= 0.30 * 18.0 &&
                  std::abs(ratio - 3.0) <= 0.15 * 3.0;
  detail = "lambda*/sigma = " + num(l1) + " (N=1, target 6 +-30%), " + num(l3) +
           " (N=3, target 18 +-30%), ratio " + num(ratio) + " (target 3 +-15%)";
  return ok;
}

bool criterion_fringe_halving(std::string& detail) {
  constexpr double tol = 0.02;
  bool ok = true;
  detail.clear();
  for (int bounces : {1, 2}) {
    InterferometerConfig c;
    c.wavelength = 0.5;
    c.bounces = bounces;
    const MirrorState initial = gaussian_diag(c, 1.0, 0.0, 16);
    const qm::ExitAmplitudes amps = qm::exit_amplitudes(c, initial.grid);
    const MirrorState conditioned = qm::conditional_update(initial, amps, Port::left);
    const qm::FringeReport rep = qm::fringe_period(conditioned, initial);
    const double target = c.wavelength / (4.0 * bounces);
    if (!rep.period) {
      ok = false;
      detail += "N=" + std::to_string(bounces) + ": no period; ";
      continue;
    }
    const double rel = std::abs(*rep.period - target) / target;
    ok = ok && rel <= tol;
    detail += "N=" + std::to_string(bounces) + ": period " + num(*rep.period) + " vs " +
              num(target) + " (rel dev " + num(rel) + "); ";
  }
  detail += "tol " + num(tol);
  return ok;
}

bool criterion_imperfect_mirror(std::string& detail) {
  constexpr double tol = 5e-3;
  InterferometerConfig c;
  c.wavelength = 0.1;
  c.reflectivity = 0.6;
  const MirrorState initial = gaussian_diag(c, 1.0, 0.0, 16);
  const std::vector<double> probs = follow_chain(initial, c, 2);
  const double i_ll = probs[1];
  bool ok = std::abs(i_ll - 0.764) <= tol &&
            std::abs(i_ll - oracle::follow_after_one_left(0.6)) <= tol;
  detail = "I_{L,L}(0.6) = " + num(i_ll) + " vs 0.764 (oracle " +
           num(oracle::follow_after_one_left(0.6)) + "), tol " + num(tol) + "; I_LL > I_L:";
  for (double r : {0.6, 0.7, 0.8, 0.9, 1.0}) {
    InterferometerConfig cr = c;
    cr.reflectivity = r;
    const std::vector<double> p = follow_chain(initial, cr, 2);
    const bool gain = p[1] > p[0];
    ok = ok && gain;
    detail += gain ? "" : (" violated at r=" + num(r));
  }
  detail += " all r in {0.6..1.0}";
  return ok;
}

bool criterion_probability_conservation(std::string& detail) {
  constexpr double tol = 1e-8;
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    InterferometerConfig c;
    c.wavelength = 0.3 + 2.0 * u01(rng);
    c.reflectivity = 0.25 + 0.75 * u01(rng);
    c.phase = 2.0 * oracle::pi * u01(rng);
    c.bounces = 1 + static_cast<int>(3.0 * u01(rng));
    const int depth = 4 + static_cast<int>(7.0 * u01(rng));
    const MirrorState initial = gaussian_diag(c, 1.0, 0.0, 8);
    const qm::HistoryTree tree = qm::enumerate_histories(initial, c, depth);
    worst = std::max(worst, std::abs(sum_leaf_weights(tree.root) - 1.0));
  }
  detail = "max |sum_H p_H - 1| = " + num(worst) + " over 20 random configs, depth <= 10, tol " +
           num(tol);
  return worst <= tol;
}

bool criterion_monte_carlo(std::string& detail) {
  constexpr int count = 100000;
  constexpr std::uint64_t seed = 20210905;
  InterferometerConfig c;
  c.wavelength = 0.5;
  c.reflectivity = 0.7;
  c.phase = 0.9;
  const MirrorState initial = gaussian_diag(c, 1.0, 0.0, 16);

  // Exact depth-3 history weights, cross-checked against an independent
  // quadrature with the closed-form single-bounce amplitudes.
  const qm::HistoryTree tree = qm::enumerate_histories(initial, c, 3);
  std::vector<std::pair<std::string, double>> exact;
  const std::function<void(const qm::HistoryNode&)> collect = [&](const qm::HistoryNode& n) {
    if (!n.left && !n.right) {
      exact.emplace_back(n.history, n.weight);
      return;
    }
    collect(*n.left);
    collect(*n.right);
  };
  collect(tree.root);
  if (exact.size() != 8) {
    detail = "expected 8 depth-3 histories, got " + std::to_string(exact.size());
    return false;
  }
  double worst_quad = 0.0;
  for (const auto& [history, weight] : exact) {
    const double by_quadrature = oracle::simpson(
        [&](double x) {
          double density = oracle::gaussian_density(x, 1.0);
          for (char port : history) {
            const double phi_eff = port == 'L' ? c.phase : c.phase - oracle::pi;
            density *= std::norm(oracle::chain_amplitude_left_n1(c.reflectivity, phi_eff,
                                                                 c.wavelength, x));
          }
          return density;
        },
        -6.0, 6.0, 1 << 16);
    worst_quad = std::max(worst_quad, std::abs(weight - by_quadrature));
  }
  if (worst_quad > 1e-6) {
    detail = "enumerated weights deviate from quadrature by " + num(worst_quad);
    return false;
  }

  // Force two genuinely different thread counts regardless of the host core
  // count; OpenMP oversubscribes happily and the records must not care.
  const int saved_threads = omp_get_max_threads();
  omp_set_num_threads(4);
  const std::vector<qm::MeasurementRecord> records =
      qm::sample_trajectories(initial, c, 3, count, seed);
  bool ok = true;
  double worst_sigmas = 0.0;
  for (const auto& [history, weight] : exact) {
    long hits = 0;
    for (const auto& rec : records) hits += rec.outcomes == history ? 1 : 0;
    const double freq = static_cast<double>(hits) / count;
    const double se = std::sqrt(weight * (1.0 - weight) / count);
    const double sigmas = std::abs(freq - weight) / se;
    worst_sigmas = std::max(worst_sigmas, sigmas);
    ok = ok && sigmas <= 3.0;
  }

  omp_set_num_threads(1);
  const std::vector<qm::MeasurementRecord> serial =
      qm::sample_trajectories(initial, c, 3, count, seed);
  omp_set_num_threads(saved_threads);
  bool identical = serial.size() == records.size();
  for (std::size_t i = 0; identical && i < records.size(); ++i) {
    identical = records[i].seed == serial[i].seed &&
                records[i].outcomes == serial[i].outcomes &&
                records[i].step_probabilities.size() == serial[i].step_probabilities.size();
    for (std::size_t s = 0; identical && s < records[i].step_probabilities.size(); ++s)
      identical = records[i].step_probabilities[s].left == serial[i].step_probabilities[s].left &&
                  records[i].step_probabilities[s].right == serial[i].step_probabilities[s].right;
  }
  ok = ok && identical;
  detail = "10^5 trajectories: worst deviation " + num(worst_sigmas) +
           " standard errors (limit 3); 4-thread vs 1-thread runs " +
           (identical ? "byte-identical" : "DIFFER");
  return ok;
}

bool criterion_robustness(std::string& detail) {
  constexpr double tol_follow = 2e-3;
  constexpr double tol_flat = 0.01;
  struct Variant {
    const char* label;
    qm::StateSpec spec;
  };
  std::vector<Variant> variants(3);
  variants[0].label = "displaced x0=3";
  variants[0].spec.center = 3.0;
  variants[1].label = "boosted p0=10";
  variants[1].spec.momentum = 10.0;
  variants[2].label = "thermal lc=sigma/4";
  variants[2].spec.kind = qm::StateKind::thermal;
  variants[2].spec.coherence_length = 0.25;

  bool ok = true;
  detail.clear();
  for (const Variant& v : variants) {
    InterferometerConfig fast;
    fast.wavelength = 0.1;
    const std::vector<double> probs = follow_chain(diag_state(fast, v.spec, 16), fast, 4);
    double worst_follow = 0.0;
    for (int n = 1; n <= 3; ++n)
      worst_follow = std::max(
          worst_follow,
          std::abs(probs[static_cast<std::size_t>(n)] - oracle::follow_probability(n)));

    InterferometerConfig slow;
    slow.wavelength = 0.5;
    const std::vector<double> scan =
        qm::intensity_phi_scan(diag_state(slow, v.spec, 16), slow, 32);
    double worst_flat = 0.0;
    for (double val : scan) worst_flat = std::max(worst_flat, std::abs(val - 0.5));

    const bool pass = worst_follow <= tol_follow && worst_flat <= tol_flat;
    ok = ok && pass;
    detail += std::string(v.label) + ": follow dev " + num(worst_follow) + ", flatness dev " +
              num(worst_flat) + "; ";
  }
  detail += "tols " + num(tol_follow) + " / " + num(tol_flat);
  return ok;
}

bool criterion_delay(std::string& detail) {
  constexpr double rel_tol = 1e-12;
  const double lib = qm::min_photon_delay({1e-13, 0.3, 3});
  const double reference = oracle::min_delay(1e-13, 0.3, 3);
  char printed[32];
  std::snprintf(printed, sizeof printed, "%.4e", lib);
  detail = "delay(100 fs, 0.3 m, N=3) = " + std::string(printed) + " s vs oracle " +
           num(reference) + ", rel tol " + num(rel_tol);
  return std::abs(lib - reference) <= rel_tol * reference;
}

}  // namespace

int main() {
  std::printf("acceptance checks, %d OpenMP threads available\n", omp_get_max_threads());
  run(1, "single-bounce chain matches the closed-form kernel", criterion_closed_form);
  run(2, "exit amplitudes stay normalized", criterion_normalization);
  run(3, "follow probabilities 3/4, 5/6, 7/8", criterion_entrainment_sequence);
  run(4, "first photon unbiased when fringes are washed out", criterion_flat_first_photon);
  run(5, "washout thresholds near 6 sigma (N=1) and 18 sigma (N=3)",
      criterion_washout_thresholds);
  run(6, "imprint period lambda/4 (N=1) and lambda/8 (N=2)", criterion_fringe_halving);
  run(7, "entrainment persists at 60% reflectivity", criterion_imperfect_mirror);
  run(8, "history weights sum to one", criterion_probability_conservation);
  run(9, "Monte Carlo matches exact weights, thread-count invariant", criterion_monte_carlo);
  run(10, "displaced / boosted / thermal states behave identically", criterion_robustness);
  run(11, "minimum inter-photon delay bound", criterion_delay);
  std::printf("%d of 11 criteria passed\n", 11 - failures);
  return failures;
}
