#include <omp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "emit.hpp"
#include "json.hpp"
#include "qmirror/analysis.hpp"
#include "qmirror/dynamics.hpp"
#include "qmirror/errors.hpp"
#include "run_config.hpp"

namespace {

using nlohmann::json;
using qmtool::fmt;
using qmtool::RunConfig;

// Streams the data product to the requested file or stdout; progress and
// human-readable summaries go to the other channel so they never mix.
struct OutputTarget {
  std::ofstream file;
  std::ostream* data = &std::cout;
  bool to_file = false;

  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw qm::config_error("cannot open output file '" + path + "'");
      data = &file;
      to_file = true;
    }
  }
  std::ostream& stream() { return *data; }
  std::ostream& report() { return to_file ? std::cout : std::cerr; }
};

qm::MirrorState build_state(const RunConfig& cfg, double finest_lambda) {
  qm::InterferometerConfig c = cfg.optics;
  c.wavelength = finest_lambda;
  c.validate();
  cfg.state.validate();
  const qm::SpatialGrid grid = qm::make_grid_for(c, cfg.effective_halfwidth(),
                                                 cfg.points_per_fringe, cfg.state.center,
                                                 cfg.representation);
  return qm::make_state(grid, cfg.state, cfg.representation);
}

std::string history_label(int detections) { return "I_" + std::string(detections, 'L'); }

int cmd_simulate(const RunConfig& cfg) {
  if (cfg.photons < 1) throw qm::config_error("run.photons must be at least 1");
  if (cfg.trajectories < 1) throw qm::config_error("run.trajectories must be at least 1");
  const qm::MirrorState initial = build_state(cfg, cfg.optics.wavelength);
  const std::vector<qm::MeasurementRecord> records =
      qm::sample_trajectories(initial, cfg.optics, cfg.photons, cfg.trajectories, cfg.seed);

  // Entrainment summary: how often photon n+1 repeats the port after n
  // identical detections.
  struct FollowRow {
    int prefix = 0;
    long count = 0;
    long followed = 0;
  };
  std::vector<FollowRow> follow;
  for (int n = 1; n < cfg.photons; ++n) {
    FollowRow row;
    row.prefix = n;
    for (const auto& rec : records) {
      bool identical = true;
      for (int i = 1; i < n; ++i) identical = identical && rec.outcomes[i] == rec.outcomes[0];
      if (!identical) continue;
      ++row.count;
      if (rec.outcomes[static_cast<std::size_t>(n)] == rec.outcomes[static_cast<std::size_t>(n - 1)])
        ++row.followed;
    }
    follow.push_back(row);
  }

  OutputTarget out(cfg.output_path);
  if (cfg.format == "json") {
    json j;
    json traj = json::array();
    for (std::size_t i = 0; i < records.size(); ++i) {
      json rec;
      rec["index"] = i;
      rec["seed"] = records[i].seed;
      rec["outcomes"] = records[i].outcomes;
      json p = json::array();
      for (const auto& sp : records[i].step_probabilities) p.push_back(sp.left);
      rec["p_left"] = std::move(p);
      traj.push_back(std::move(rec));
    }
    j["trajectories"] = std::move(traj);
    json fb = json::array();
    for (const auto& row : follow) {
      json r;
      r["prefix_length"] = row.prefix;
      r["count"] = row.count;
      if (row.count > 0)
        r["fraction"] = static_cast<double>(row.followed) / static_cast<double>(row.count);
      else
        r["fraction"] = nullptr;
      fb.push_back(std::move(r));
    }
    j["follow_bias"] = std::move(fb);
    out.stream() << j.dump(2) << '\n';
  } else {
    std::vector<std::string> header{"trajectory", "seed", "outcomes"};
    for (int s = 1; s <= cfg.photons; ++s) header.push_back("p_left_before_" + std::to_string(s));
    std::vector<std::vector<std::string>> rows;
    rows.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      std::vector<std::string> row{fmt(static_cast<std::uint64_t>(i)), fmt(records[i].seed),
                                   records[i].outcomes};
      for (const auto& sp : records[i].step_probabilities) row.push_back(fmt(sp.left));
      rows.push_back(std::move(row));
    }
    qmtool::write_csv(out.stream(), header, rows);
  }

  auto& rep = out.report();
  rep << "trajectories: " << records.size() << ", photons each: " << cfg.photons << '\n';
  for (const auto& row : follow) {
    rep << "after " << row.prefix << " identical detection(s): " << row.count << " runs, follow fraction ";
    if (row.count > 0)
      rep << fmt(static_cast<double>(row.followed) / static_cast<double>(row.count));
    else
      rep << "-";
    rep << '\n';
  }
  return 0;
}

int cmd_entrain(const RunConfig& cfg) {
  const qm::MirrorState initial = build_state(cfg, cfg.optics.wavelength);
  const std::vector<qm::EntrainmentRow> rows =
      qm::entrainment_curve(initial, cfg.optics, cfg.r_values, cfg.entrain_depth,
                            cfg.entrain_phi_samples, cfg.entrain_phi_halfspan);

  OutputTarget out(cfg.output_path);
  if (cfg.format == "json") {
    json j = json::array();
    for (const auto& row : rows) {
      json r;
      r["reflectivity"] = row.reflectivity;
      r[history_label(1)] = row.i_l;
      for (std::size_t q = 0; q < row.follow.size(); ++q)
        r[history_label(static_cast<int>(q) + 2)] = row.follow[q];
      r["phi_band_halfwidth"] = row.phi_band_halfwidth;
      j.push_back(std::move(r));
    }
    out.stream() << j.dump(2) << '\n';
  } else {
    std::vector<std::string> header{"reflectivity"};
    for (int k = 1; k <= cfg.entrain_depth; ++k) header.push_back(history_label(k));
    header.push_back("phi_band_halfwidth");
    std::vector<std::vector<std::string>> table;
    for (const auto& row : rows) {
      std::vector<std::string> r{fmt(row.reflectivity), fmt(row.i_l)};
      for (double v : row.follow) r.push_back(fmt(v));
      r.push_back(fmt(row.phi_band_halfwidth));
      table.push_back(std::move(r));
    }
    qmtool::write_csv(out.stream(), header, table);
  }
  return 0;
}

int cmd_surface(const RunConfig& cfg) {
  const qm::AxisSpec lambda{cfg.lambda_min, cfg.lambda_max, cfg.lambda_count};
  const qm::AxisSpec phi{cfg.phi_min, cfg.phi_max, cfg.phi_count};
  const qm::MirrorState initial = build_state(cfg, cfg.lambda_min);
  const qm::IntensitySurface surf =
      qm::intensity_surface(initial, cfg.optics, lambda, phi, cfg.surface_histories);

  OutputTarget out(cfg.output_path);
  if (cfg.format == "json") {
    json j;
    j["lambda_axis"] = surf.lambda_axis;
    j["phi_axis"] = surf.phi_axis;
    json values;
    for (std::size_t h = 0; h < surf.histories.size(); ++h) {
      json sheet = json::array();
      for (std::size_t il = 0; il < surf.lambda_axis.size(); ++il) {
        json line = json::array();
        for (std::size_t ip = 0; ip < surf.phi_axis.size(); ++ip)
          line.push_back(surf.at(h, il, ip));
        sheet.push_back(std::move(line));
      }
      values[surf.histories[h]] = std::move(sheet);
    }
    j["values"] = std::move(values);
    out.stream() << j.dump(2) << '\n';
  } else {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t h = 0; h < surf.histories.size(); ++h)
      for (std::size_t il = 0; il < surf.lambda_axis.size(); ++il)
        for (std::size_t ip = 0; ip < surf.phi_axis.size(); ++ip)
          rows.push_back({fmt(surf.lambda_axis[il]), fmt(surf.phi_axis[ip]), surf.histories[h],
                          fmt(surf.at(h, il, ip))});
    qmtool::write_csv(out.stream(), {"wavelength", "phase", "history", "probability"}, rows);
  }
  return 0;
}

int cmd_fringes(const RunConfig& cfg) {
  const qm::MirrorState initial = build_state(cfg, cfg.optics.wavelength);
  cfg.optics.validate();
  const qm::ExitAmplitudes amps = qm::exit_amplitudes(cfg.optics, initial.grid);

  struct Extracted {
    qm::History history;
    std::vector<double> density;
    qm::FringeReport report;
  };
  std::vector<Extracted> results;
  for (const qm::History& h : cfg.fringe_histories) {
    if (h.empty()) throw qm::config_error("fringe histories must not be empty");
    qm::MirrorState conditioned = initial;
    for (char ch : h)
      conditioned = qm::conditional_update(conditioned, amps, qm::port_from_char(ch));
    results.push_back({h, conditioned.diagonal(), qm::fringe_period(conditioned, initial)});
  }

  OutputTarget out(cfg.output_path);
  const std::vector<double> reference = initial.diagonal();
  if (cfg.format == "json") {
    json j;
    json xs = json::array();
    for (int i = 0; i < initial.n(); ++i) xs.push_back(initial.grid.x(i));
    j["x"] = std::move(xs);
    j["reference"] = reference;
    json hist;
    for (const auto& res : results) {
      json r;
      r["density"] = res.density;
      if (res.report.period)
        r["period"] = *res.report.period;
      else
        r["period"] = nullptr;
      r["visibility"] = res.report.visibility;
      r["zero_crossings"] = res.report.zero_crossings;
      hist[res.history] = std::move(r);
    }
    j["histories"] = std::move(hist);
    out.stream() << j.dump(2) << '\n';
  } else {
    std::vector<std::string> header{"x", "reference"};
    for (const auto& res : results) header.push_back(res.history);
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < initial.n(); ++i) {
      std::vector<std::string> row{fmt(initial.grid.x(i)), fmt(reference[static_cast<std::size_t>(i)])};
      for (const auto& res : results) row.push_back(fmt(res.density[static_cast<std::size_t>(i)]));
      rows.push_back(std::move(row));
    }
    qmtool::write_csv(out.stream(), header, rows);
  }

  auto& rep = out.report();
  for (const auto& res : results) {
    rep << "history " << res.history << ": period=";
    if (res.report.period)
      rep << fmt(*res.report.period);
    else
      rep << "n/a";
    rep << " visibility=" << fmt(res.report.visibility)
        << " zero_crossings=" << res.report.zero_crossings << '\n';
  }
  return 0;
}

int cmd_delay(const RunConfig& cfg) {
  const double v = qm::min_photon_delay(
      {cfg.delay_coherence_time, cfg.delay_mirror_distance, cfg.optics.bounces});
  OutputTarget out(cfg.output_path);
  if (cfg.format == "json") {
    json j;
    j["minimum_delay_s"] = v;
    out.stream() << j.dump(2) << '\n';
  } else {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    out.stream() << buf << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-photon quantum-mirror interferometer simulator"};
  app.footer("Lengths and momenta are dimensionless (the mirror spread sets the scale, hbar = 1);\n"
             "only the delay command works in SI seconds and metres.");
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, output_override, format_override;
  std::uint64_t seed_override = 0;
  int threads = 0;
  app.add_option("-c,--config", config_path, "config file with key = value lines");
  auto* opt_output = app.add_option("-o,--output", output_override, "output file (default: stdout)");
  auto* opt_format =
      app.add_option("-f,--format", format_override, "output format")->check(CLI::IsMember({"csv", "json"}));
  auto* opt_seed = app.add_option("-s,--seed", seed_override, "master random seed");
  app.add_option("-t,--threads", threads, "worker thread count (default: OpenMP runtime)");

  auto* sub_simulate =
      app.add_subcommand("simulate", "sample seeded photon-detection trajectories");
  auto* sub_entrain =
      app.add_subcommand("entrain", "follow probabilities against mirror reflectivity");
  auto* sub_surface =
      app.add_subcommand("surface", "conditional intensities over a (wavelength, phase) sheet");
  auto* sub_fringes =
      app.add_subcommand("fringes", "conditioned mirror densities and fringe metrics");
  auto* sub_delay = app.add_subcommand("delay", "minimum inter-photon delay bound (seconds)");
  double coherence_fs = 0.0, distance_m = 0.0;
  int delay_bounces = 0;
  auto* opt_coherence =
      sub_delay->add_option("--coherence-fs", coherence_fs, "photon coherence time (femtoseconds)");
  auto* opt_distance =
      sub_delay->add_option("--distance-m", distance_m, "splitter-mirror distance (metres)");
  auto* opt_bounces = sub_delay->add_option("--bounces", delay_bounces, "bounces per photon");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : qmtool::load_run_config(config_path);
    if (opt_output->count() > 0) cfg.output_path = output_override;
    if (opt_format->count() > 0) cfg.format = format_override;
    if (opt_seed->count() > 0) cfg.seed = seed_override;
    if (opt_coherence->count() > 0) cfg.delay_coherence_time = coherence_fs * 1e-15;
    if (opt_distance->count() > 0) cfg.delay_mirror_distance = distance_m;
    if (opt_bounces->count() > 0) cfg.optics.bounces = delay_bounces;
    if (threads < 0) throw qm::config_error("thread count must be positive");
    if (threads > 0) omp_set_num_threads(threads);

    if (sub_simulate->parsed()) return cmd_simulate(cfg);
    if (sub_entrain->parsed()) return cmd_entrain(cfg);
    if (sub_surface->parsed()) return cmd_surface(cfg);
    if (sub_fringes->parsed()) return cmd_fringes(cfg);
    if (sub_delay->parsed()) return cmd_delay(cfg);
    throw qm::config_error("no subcommand selected");
  } catch (const qm::grid_cap_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const qm::config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
