#pragma once

#include <stdexcept>
#include <string>

namespace qm {

// invalid parameters, malformed config files, unknown keys -> CLI exit 1
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// resource limit hit while running (grid cap, tree cap) -> CLI exit 2
struct grid_cap_error : std::runtime_error {
  explicit grid_cap_error(const std::string& what) : std::runtime_error(what) {}
};

// operation applied to a state representation that cannot support it
struct representation_error : std::logic_error {
  explicit representation_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qm
