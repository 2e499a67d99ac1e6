#pragma once

#include <stdexcept>
#include <string>

namespace fairkit {

/// Exit codes returned by the command-line tool.
enum class ExitCode : int {
    ok = 0,
    config = 2,
    data = 3,
    numeric = 4,
};

class Error : public std::runtime_error {
public:
    Error(ExitCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ExitCode code() const noexcept { return code_; }
    const char* kind() const noexcept;

private:
    ExitCode code_;
};

/// Invalid option, flag combination or configuration value.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error(ExitCode::config, message) {}
};

/// Malformed or inconsistent input data.
class DataError : public Error {
public:
    explicit DataError(const std::string& message) : Error(ExitCode::data, message) {}
};

/// Factorization or other numerical failure.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& message) : Error(ExitCode::numeric, message) {}
};

}  // namespace fairkit
