#pragma once

#include <stdexcept>
#include <string>

namespace dcsim {

/// Scenario configuration rejected before the simulation starts (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal consistency failure while the simulation is running (CLI exit code 3).
/// These indicate a simulator bug, never a bad scenario; the run aborts rather
/// than producing silently wrong output.
class RuntimeAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dcsim
