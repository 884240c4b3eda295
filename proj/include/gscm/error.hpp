#pragma once

#include <stdexcept>
#include <string>

namespace gscm {

/// Numerical or precondition failure inside the simulator.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid user-supplied configuration (config file, scenario file, CLI).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace gscm
