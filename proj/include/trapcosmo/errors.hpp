#pragma once

#include <stdexcept>
#include <string>

namespace trapcosmo {

// Base of all library failures so callers can catch a single type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside a function's mathematical or configured domain.
struct DomainError : Error {
    using Error::Error;
};

// Iterative scheme exhausted its budget before reaching tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

// Evaluation at a pole of an analytic function.
struct PoleError : Error {
    using Error::Error;
};

// Malformed or inconsistent configuration text. line is 1-based; 0 means the
// failure is not tied to a single line.
struct ConfigError : Error {
    ConfigError(const std::string& msg, int line_number)
        : Error(line_number > 0 ? "line " + std::to_string(line_number) + ": " + msg : msg),
          line(line_number) {}
    int line;
};

// Filesystem failure; message carries the offending path.
struct IoError : Error {
    using Error::Error;
};

}  // namespace trapcosmo
