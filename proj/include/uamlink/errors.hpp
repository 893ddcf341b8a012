#pragma once

#include <stdexcept>
#include <string>

namespace uamlink {

/// Argument outside the mathematical domain of an operation (d <= 0, alpha > 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Geometry that has no defined answer: zero vectors, coincident points, antipodes.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Orbit that the two-body propagator cannot handle (e >= 1, decayed radius).
class OrbitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid scenario or sweep configuration. `field()` carries the dotted key path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Configuration that is well formed but requests an unsupported feature (caching, M > 1).
class NotImplementedError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Filesystem or parse failure; message includes the offending path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure inside the simulation loop, tagged with the slot where it happened.
class SimulationError : public std::runtime_error {
public:
    SimulationError(int slot, const std::string& what)
        : std::runtime_error("slot " + std::to_string(slot) + ": " + what), slot_(slot) {}

    int slot() const noexcept { return slot_; }

private:
    int slot_;
};

}  // namespace uamlink
