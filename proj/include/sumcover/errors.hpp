#pragma once

#include <stdexcept>
#include <string>

namespace sumcover {

// Exit codes used by the CLI. Library code throws the matching exception;
// the tool maps it to the process exit status.
enum ExitCode : int {
    exit_ok = 0,
    exit_validation = 2,    // malformed or out-of-contract input
    exit_scale = 3,         // instance exceeds the desk-scale caps
    exit_verification = 4,  // a requested check evaluated to false
    exit_internal = 5,      // invariant breach inside the library
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ScaleError : std::runtime_error {
    explicit ScaleError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace sumcover
