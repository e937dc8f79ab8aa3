#include "qmirror/config.hpp"

namespace qm {

Port port_from_char(char c) {
  if (c == 'L' || c == 'l') return Port::left;
  if (c == 'R' || c == 'r') return Port::right;
  throw config_error(std::string("invalid port character '") + c + "' (expected L or R)");
}

void InterferometerConfig::validate() const {
  if (!(wavelength > 0.0)) throw config_error("wavelength must be > 0");
  if (!std::isfinite(phase)) throw config_error("phase must be finite");
  if (!(reflectivity >= 0.0 && reflectivity <= 1.0))
    throw config_error("reflectivity must lie in [0, 1]");
  if (bounces < 1) throw config_error("bounces must be >= 1");
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(incidence > -half_pi && incidence < half_pi))
    throw config_error("incidence must lie in (-pi/2, pi/2)");
}

}  // namespace qm
