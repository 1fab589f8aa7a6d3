#pragma once

#include <stdexcept>
#include <string>

namespace wigsim {

// Bad user input: malformed config, inconsistent grids, invalid parameter ranges.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Simulation produced values outside its validity contract (norm blow-up,
// eigensolver failure, out-of-range contrast, ...).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// State support left the representable domain (displacement pushed
// probability into the wrap-around band, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Calibration scan did not produce a usable collapse point.
struct CalibrationError : std::runtime_error {
    explicit CalibrationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wigsim
