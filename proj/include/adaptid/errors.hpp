#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace adaptid {

/// Precondition violation on an argument (sizes, ranges, empty inputs).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A sample fed to a filter was NaN or infinite.
class InvalidSampleError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Adaptation blew up: non-finite weights, or the windowed MSE grew past the
/// divergence factor. Carries the iteration index when the runner knows it.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& what, std::optional<std::int64_t> iteration = std::nullopt)
        : std::runtime_error(iteration ? what + " (iteration " + std::to_string(*iteration) + ")" : what),
          iteration_(iteration) {}

    std::optional<std::int64_t> iteration() const noexcept { return iteration_; }

private:
    std::optional<std::int64_t> iteration_;
};

class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-positive eigenvalue where a strictly positive spectrum is required.
class DegenerateSpectrumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoPlateauError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidPlantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Experiment configuration rejected; `key()` names the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string key) : std::runtime_error(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

} // namespace adaptid
