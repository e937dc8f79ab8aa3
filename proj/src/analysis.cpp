#include "qmirror/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qmirror/errors.hpp"
#include "qmirror/kernels.hpp"

namespace qm {

namespace {

// Eight grid points per fringe is the floor below which the trapezoid trace
// of an oscillatory kernel stops being trustworthy.
void require_resolution(const SpatialGrid& g, const InterferometerConfig& c) {
  const double fringe = c.wavelength / (4.0 * c.bounces);
  if (g.spacing() > fringe / 8.0)
    throw config_error("grid spacing " + std::to_string(g.spacing()) +
                       " does not resolve the fringe period " + std::to_string(fringe) +
                       "; rebuild the grid for the finest wavelength in use");
}

void validate_axis(const AxisSpec& a, const char* name, bool positive) {
  if (a.count < 1) throw config_error(std::string(name) + " axis needs at least one sample");
  if (!std::isfinite(a.min) || !std::isfinite(a.max))
    throw config_error(std::string(name) + " axis bounds must be finite");
  if (a.count > 1 && !(a.max > a.min))
    throw config_error(std::string(name) + " axis needs max > min for multiple samples");
  if (positive && !(a.min > 0.0))
    throw config_error(std::string(name) + " axis must be strictly positive");
}

void validate_history(const History& h) {
  if (h.empty()) throw config_error("history strings must contain at least one detection");
  for (char ch : h) port_from_char(ch);
}

// P(last char of h | earlier chars of h) against precomputed amplitudes,
// serial kernels so callers can parallelize over grid cells.
double conditional_of_history(const SpatialGrid& g, const std::vector<double>& initial_diag,
                              const complexd* a_left, const complexd* a_right,
                              const History& h) {
  std::vector<double> diag = initial_diag;
  const std::size_t n = diag.size();
  for (std::size_t step = 0; step + 1 < h.size(); ++step) {
    const complexd* amp = port_from_char(h[step]) == Port::left ? a_left : a_right;
    kernels::scale_by_intensity_serial(diag.data(), amp, n);
  }
  const double w = kernels::weighted_sum_serial(g, diag.data());
  if (w <= 0.0) return 0.0;
  const complexd* amp = port_from_char(h.back()) == Port::left ? a_left : a_right;
  return kernels::intensity_projection_serial(g, amp, diag.data()) / w;
}

double phi_scan_visibility(const StateSpec& spec, InterferometerConfig c, double lambda,
                           const WashoutOptions& opt) {
  c.wavelength = lambda;
  const SpatialGrid g = make_grid_for(c, spec.envelope_halfwidth(), opt.points_per_fringe,
                                      spec.center, Representation::diagonal);
  const MirrorState state = make_state(g, spec, Representation::diagonal);
  return visibility(intensity_phi_scan(state, c, opt.phi_samples));
}

// Smallest wavelength whose phi-scan visibility still reaches the threshold.
// Downward geometric scan first: the 0.97 step is finer than the narrow
// below-threshold dips flanking the zeros of an oscillatory (flat-state)
// contrast curve, so the scan cannot jump across the main-lobe edge.
// Bisection then sharpens the bad/good bracket.
double lambda_star(const StateSpec& spec, const InterferometerConfig& base,
                   const WashoutOptions& opt) {
  const double halfwidth = spec.envelope_halfwidth();
  const double hi = opt.lambda_hi > 0.0 ? opt.lambda_hi : 40.0 * base.bounces * halfwidth;
  if (phi_scan_visibility(spec, base, hi, opt) < opt.visibility_threshold)
    throw config_error("no visible fringes at the largest wavelength searched (" +
                       std::to_string(hi) + "); raise lambda_hi or lower the threshold");
  double good = hi;
  double bad = hi;
  int steps = 0;
  do {
    good = bad;
    bad *= 0.97;
    if (++steps > 2000)
      throw config_error("fringe visibility never fell below the threshold during the "
                         "wavelength scan");
  } while (phi_scan_visibility(spec, base, bad, opt) >= opt.visibility_threshold);
  while (good - bad > opt.lambda_tol * good) {
    const double mid = 0.5 * (good + bad);
    (phi_scan_visibility(spec, base, mid, opt) >= opt.visibility_threshold ? good : bad) = mid;
  }
  return good;
}

}  // namespace

IntensitySurface intensity_surface(const MirrorState& initial, InterferometerConfig base,
                                   const AxisSpec& lambda, const AxisSpec& phi,
                                   const std::vector<History>& histories) {
  base.validate();
  validate_axis(lambda, "wavelength", /*positive=*/true);
  validate_axis(phi, "phase", /*positive=*/false);
  if (histories.empty()) throw config_error("the surface needs at least one history");
  for (const History& h : histories) validate_history(h);
  {
    InterferometerConfig finest = base;
    finest.wavelength = lambda.min;
    require_resolution(initial.grid, finest);
  }

  IntensitySurface out;
  out.lambda_axis.resize(static_cast<std::size_t>(lambda.count));
  for (int i = 0; i < lambda.count; ++i) out.lambda_axis[static_cast<std::size_t>(i)] = lambda.at(i);
  out.phi_axis.resize(static_cast<std::size_t>(phi.count));
  for (int i = 0; i < phi.count; ++i) out.phi_axis[static_cast<std::size_t>(i)] = phi.at(i);
  out.histories = histories;
  out.values.assign(histories.size() * out.lambda_axis.size() * out.phi_axis.size(), 0.0);

  const std::vector<double> initial_diag = initial.diagonal();
  const SpatialGrid grid = initial.grid;
  const std::size_t n = initial_diag.size();
  const std::size_t nl = out.lambda_axis.size();
  const std::size_t np = out.phi_axis.size();

#pragma omp parallel for collapse(2) schedule(dynamic)
  for (std::size_t il = 0; il < nl; ++il) {
    for (std::size_t ip = 0; ip < np; ++ip) {
      InterferometerConfig c = base;
      c.wavelength = out.lambda_axis[il];
      c.phase = out.phi_axis[ip];
      std::vector<complexd> al(n), ar(n);
      kernels::amplitude_grid_serial(c, grid, al.data(), ar.data());
      for (std::size_t ih = 0; ih < histories.size(); ++ih)
        out.values[(ih * nl + il) * np + ip] =
            conditional_of_history(grid, initial_diag, al.data(), ar.data(), histories[ih]);
    }
  }
  return out;
}

double visibility(const std::vector<double>& samples) {
  if (samples.size() < 8)
    throw config_error("visibility needs at least 8 intensity samples over a phase period");
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  const double denom = *mx + *mn;
  return denom > 0.0 ? (*mx - *mn) / denom : 0.0;
}

std::vector<double> intensity_phi_scan(const MirrorState& initial, InterferometerConfig base,
                                       int samples, Port port) {
  base.validate();
  if (samples < 8) throw config_error("the phase scan needs at least 8 samples");
  require_resolution(initial.grid, base);
  const std::vector<double> diag = initial.diagonal();
  std::vector<double> out(static_cast<std::size_t>(samples));
  const std::size_t n = diag.size();
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < samples; ++j) {
    InterferometerConfig c = base;
    c.phase = 2.0 * std::numbers::pi * j / samples;
    std::vector<complexd> al(n), ar(n);
    kernels::amplitude_grid_serial(c, initial.grid, al.data(), ar.data());
    const double w = kernels::weighted_sum_serial(initial.grid, diag.data());
    const complexd* amp = port == Port::left ? al.data() : ar.data();
    out[static_cast<std::size_t>(j)] =
        kernels::intensity_projection_serial(initial.grid, amp, diag.data()) / w;
  }
  return out;
}

FringeReport fringe_period(const MirrorState& conditioned, const MirrorState& reference,
                           double floor_fraction) {
  if (!(conditioned.grid == reference.grid))
    throw config_error("conditioned and reference states live on different grids");
  if (!(floor_fraction > 0.0) || !(floor_fraction < 1.0))
    throw config_error("floor_fraction must lie in (0, 1)");
  const std::vector<double> num = conditioned.diagonal();
  const std::vector<double> den = reference.diagonal();
  const double peak = *std::max_element(den.begin(), den.end());
  if (!(peak > 0.0)) throw config_error("reference state has an empty diagonal");

  std::vector<std::pair<double, double>> pts;  // (x, modulation ratio) on the mask
  for (std::size_t i = 0; i < den.size(); ++i)
    if (den[i] > floor_fraction * peak)
      pts.emplace_back(conditioned.grid.x(static_cast<int>(i)), num[i] / den[i]);

  FringeReport rep;
  if (pts.size() < 2) return rep;
  double mx = pts.front().second, mn = mx, mean = 0.0;
  for (const auto& [x, v] : pts) {
    mx = std::max(mx, v);
    mn = std::min(mn, v);
    mean += v;
  }
  mean /= static_cast<double>(pts.size());
  rep.visibility = mx + mn > 0.0 ? (mx - mn) / (mx + mn) : 0.0;

  std::vector<double> crossings;
  int last_sign = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double v = pts[i].second - mean;
    if (v == 0.0) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) {
      const double x0 = pts[i - 1].first, v0 = pts[i - 1].second - mean;
      const double x1 = pts[i].first, v1 = v;
      crossings.push_back(x0 + (x1 - x0) * v0 / (v0 - v1));
    }
    last_sign = sign;
  }
  rep.zero_crossings = static_cast<int>(crossings.size());
  if (crossings.size() >= 4)
    rep.period = 2.0 * (crossings.back() - crossings.front()) /
                 static_cast<double>(crossings.size() - 1);
  return rep;
}

WashoutResult washout_threshold(const StateSpec& spec, const InterferometerConfig& base,
                                const WashoutOptions& opt) {
  spec.validate();
  base.validate();
  if (!(opt.visibility_threshold > 0.0) || !(opt.visibility_threshold < 1.0))
    throw config_error("visibility threshold must lie in (0, 1)");
  if (!(opt.lambda_tol > 0.0)) throw config_error("lambda tolerance must be positive");
  if (opt.phi_samples < 8) throw config_error("the phase scan needs at least 8 samples");
  if (opt.points_per_fringe < 8)
    throw config_error("the washout search needs at least 8 points per fringe");

  WashoutResult res;
  res.lambda_star = lambda_star(spec, base, opt);

  // Calibrate the reference scale by running the identical search on a unit
  // flat state, so a flat input reports a form factor of exactly 1 and other
  // shapes are measured relative to it.
  StateSpec ref;
  ref.kind = StateKind::top_hat;
  ref.width = 1.0;
  ref.center = 0.0;
  WashoutOptions ref_opt = opt;
  ref_opt.lambda_hi = 0.0;
  const double ref_star = lambda_star(ref, base, ref_opt);
  const double char_width = spec.kind == StateKind::top_hat ? spec.width : spec.sigma;
  res.form_factor = res.lambda_star / (char_width * ref_star);
  return res;
}

std::vector<EntrainmentRow> entrainment_curve(const MirrorState& initial,
                                              InterferometerConfig base,
                                              const std::vector<double>& r_values,
                                              int depth, int phi_samples, double phi_halfspan) {
  base.validate();
  if (r_values.empty()) throw config_error("the entrainment curve needs reflectivity values");
  if (depth < 1) throw config_error("entrainment depth must be at least 1");
  if (phi_samples < 0 || !(phi_halfspan >= 0.0) || !std::isfinite(phi_halfspan))
    throw config_error("invalid phase band for the entrainment curve");
  require_resolution(initial.grid, base);
  for (double r : r_values) {  // validate before the parallel sweep
    InterferometerConfig c = base;
    c.reflectivity = r;
    c.validate();
  }

  const std::vector<double> initial_diag = initial.diagonal();
  const SpatialGrid grid = initial.grid;
  const std::size_t n = initial_diag.size();

  // All-left spine probabilities [I_L, I_{L,L}, ...] at one phase setting.
  const auto spine = [&](const InterferometerConfig& c) {
    std::vector<complexd> al(n), ar(n);
    kernels::amplitude_grid_serial(c, grid, al.data(), ar.data());
    std::vector<double> diag = initial_diag;
    std::vector<double> probs(static_cast<std::size_t>(depth), 0.0);
    for (int step = 0; step < depth; ++step) {
      const double w = kernels::weighted_sum_serial(grid, diag.data());
      if (w <= 0.0) break;
      probs[static_cast<std::size_t>(step)] =
          kernels::intensity_projection_serial(grid, al.data(), diag.data()) / w;
      if (step + 1 < depth) kernels::scale_by_intensity_serial(diag.data(), al.data(), n);
    }
    return probs;
  };

  std::vector<EntrainmentRow> rows(r_values.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t ir = 0; ir < r_values.size(); ++ir) {
    InterferometerConfig c = base;
    c.reflectivity = r_values[ir];
    EntrainmentRow row;
    row.reflectivity = r_values[ir];
    const std::vector<double> centre = spine(c);
    row.i_l = centre[0];
    row.follow.assign(centre.begin() + 1, centre.end());

    if (depth > 1 && phi_samples >= 2 && phi_halfspan > 0.0) {
      std::vector<double> lo(row.follow), hi(row.follow);
      for (int j = 0; j < phi_samples; ++j) {
        InterferometerConfig cb = c;
        cb.phase = base.phase - phi_halfspan +
                   2.0 * phi_halfspan * j / (phi_samples - 1);
        const std::vector<double> probs = spine(cb);
        for (std::size_t q = 0; q + 1 < probs.size(); ++q) {
          lo[q] = std::min(lo[q], probs[q + 1]);
          hi[q] = std::max(hi[q], probs[q + 1]);
        }
      }
      double band = 0.0;
      for (std::size_t q = 0; q < lo.size(); ++q) band = std::max(band, (hi[q] - lo[q]) / 2.0);
      row.phi_band_halfwidth = band;
    }
    rows[ir] = std::move(row);
  }
  return rows;
}

}  // namespace qm
