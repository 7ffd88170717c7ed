#pragma once

#include <stdexcept>
#include <string>

namespace fedspec {

/// Raised when an operation receives arguments outside its domain
/// (negative distance, malformed distribution, shape mismatch, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised for scenario configurations that violate an invariant. `key()`
/// names the offending field when one can be identified.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& message, std::string key = {})
        : std::runtime_error(message), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// File-system failures; the message always carries the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fedspec
