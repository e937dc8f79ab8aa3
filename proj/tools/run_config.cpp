#include "run_config.hpp"

#include <fstream>
#include <stdexcept>

#include "qmirror/errors.hpp"

namespace qmtool {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (trim(value.substr(pos)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw qm::config_error("value for '" + key + "' is not a number: '" + value + "'");
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (trim(value.substr(pos)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw qm::config_error("value for '" + key + "' is not an integer: '" + value + "'");
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (trim(value.substr(pos)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw qm::config_error("value for '" + key + "' is not an unsigned integer: '" + value + "'");
}

std::vector<std::string> split_list(const std::string& key, const std::string& value) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    const std::string item =
        trim(comma == std::string::npos ? value.substr(start) : value.substr(start, comma - start));
    if (item.empty()) throw qm::config_error("empty entry in list for '" + key + "'");
    items.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const std::string& item : split_list(key, value)) out.push_back(parse_double(key, item));
  return out;
}

qm::StateKind parse_kind(const std::string& value) {
  if (value == "gaussian") return qm::StateKind::gaussian;
  if (value == "thermal") return qm::StateKind::thermal;
  if (value == "top_hat") return qm::StateKind::top_hat;
  throw qm::config_error("unknown state kind '" + value +
                         "' (expected gaussian, thermal or top_hat)");
}

qm::Representation parse_representation(const std::string& value) {
  if (value == "diagonal") return qm::Representation::diagonal;
  if (value == "full_matrix") return qm::Representation::full_matrix;
  throw qm::config_error("unknown representation '" + value +
                         "' (expected diagonal or full_matrix)");
}

}  // namespace

double RunConfig::effective_halfwidth() const {
  if (grid_halfwidth > 0.0) return grid_halfwidth;
  return state.kind == qm::StateKind::top_hat ? state.envelope_halfwidth()
                                              : 1.25 * state.envelope_halfwidth();
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "wavelength")
    cfg.optics.wavelength = parse_double(key, value);
  else if (key == "phase")
    cfg.optics.phase = parse_double(key, value);
  else if (key == "reflectivity")
    cfg.optics.reflectivity = parse_double(key, value);
  else if (key == "bounces")
    cfg.optics.bounces = parse_int(key, value);
  else if (key == "incidence")
    cfg.optics.incidence = parse_double(key, value);
  else if (key == "entry_port") {
    if (value.size() != 1) throw qm::config_error("entry_port must be a single character L or R");
    cfg.optics.entry = qm::port_from_char(value[0]);
  } else if (key == "state.kind")
    cfg.state.kind = parse_kind(value);
  else if (key == "state.sigma")
    cfg.state.sigma = parse_double(key, value);
  else if (key == "state.center")
    cfg.state.center = parse_double(key, value);
  else if (key == "state.momentum")
    cfg.state.momentum = parse_double(key, value);
  else if (key == "state.coherence_length")
    cfg.state.coherence_length = parse_double(key, value);
  else if (key == "state.width")
    cfg.state.width = parse_double(key, value);
  else if (key == "grid.points_per_fringe")
    cfg.points_per_fringe = parse_int(key, value);
  else if (key == "grid.halfwidth")
    cfg.grid_halfwidth = parse_double(key, value);
  else if (key == "grid.representation")
    cfg.representation = parse_representation(value);
  else if (key == "run.depth")
    cfg.depth = parse_int(key, value);
  else if (key == "run.trajectories")
    cfg.trajectories = parse_int(key, value);
  else if (key == "run.photons")
    cfg.photons = parse_int(key, value);
  else if (key == "run.seed")
    cfg.seed = parse_u64(key, value);
  else if (key == "output.path")
    cfg.output_path = value;
  else if (key == "output.format") {
    if (value != "csv" && value != "json")
      throw qm::config_error("output.format must be csv or json");
    cfg.format = value;
  } else if (key == "surface.lambda_min")
    cfg.lambda_min = parse_double(key, value);
  else if (key == "surface.lambda_max")
    cfg.lambda_max = parse_double(key, value);
  else if (key == "surface.lambda_count")
    cfg.lambda_count = parse_int(key, value);
  else if (key == "surface.phi_min")
    cfg.phi_min = parse_double(key, value);
  else if (key == "surface.phi_max")
    cfg.phi_max = parse_double(key, value);
  else if (key == "surface.phi_count")
    cfg.phi_count = parse_int(key, value);
  else if (key == "surface.histories")
    cfg.surface_histories = split_list(key, value);
  else if (key == "entrain.r_values")
    cfg.r_values = parse_double_list(key, value);
  else if (key == "entrain.depth")
    cfg.entrain_depth = parse_int(key, value);
  else if (key == "entrain.phi_samples")
    cfg.entrain_phi_samples = parse_int(key, value);
  else if (key == "entrain.phi_halfspan")
    cfg.entrain_phi_halfspan = parse_double(key, value);
  else if (key == "fringes.histories")
    cfg.fringe_histories = split_list(key, value);
  else if (key == "delay.coherence_time")
    cfg.delay_coherence_time = parse_double(key, value);
  else if (key == "delay.mirror_distance")
    cfg.delay_mirror_distance = parse_double(key, value);
  else
    throw qm::config_error("unknown configuration key '" + key + "'");
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qm::config_error("cannot open config file '" + path + "'");
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw qm::config_error("line " + std::to_string(line_no) + " of '" + path +
                             "' is not a key = value assignment");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw qm::config_error("missing key on line " + std::to_string(line_no));
    apply_key(cfg, key, value);
  }
  return cfg;
}

}  // namespace qmtool
