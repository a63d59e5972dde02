#pragma once

#include <stdexcept>
#include <string>

namespace ncqm {

// Input outside the representable domain (tail guards, rho=0, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Integrator rejected a step (energy jump beyond tolerance).
struct StepSizeError : std::runtime_error {
    explicit StepSizeError(const std::string& what) : std::runtime_error(what) {}
};

// omega_L = omega_R = 0 passed to the oscillator machinery.
struct DegenerateModel : std::runtime_error {
    explicit DegenerateModel(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ncqm
