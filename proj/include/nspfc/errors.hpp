#pragma once

#include <stdexcept>
#include <string>

namespace nspfc {

// Bad grid/parameter/config input. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values detected during time stepping. Maps to CLI exit code 2.
class BlowUpError : public std::runtime_error {
  public:
    BlowUpError(long step, double t)
        : std::runtime_error("non-finite state detected at step " + std::to_string(step) +
                             ", t=" + std::to_string(t)),
          step(step), t(t) {}
    long step;
    double t;
};

// Snapshot / filesystem problems. Maps to CLI exit code 1.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nspfc
