#pragma once

#include <stdexcept>
#include <string>

namespace vrc {

enum class ErrorKind {
    Parse,        // malformed input text
    Metric,       // metric axiom violation
    Precondition, // operation preconditions (genericity, tree metric, order compatibility)
    NoApex,       // cone construction found no admissible apex
    Budget,       // simplex or oracle budget exceeded
    Stuck,        // collapse execution cannot proceed
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind(kind) {}

    ErrorKind kind;
};

} // namespace vrc
