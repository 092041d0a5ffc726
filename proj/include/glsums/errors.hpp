#pragma once

#include <stdexcept>
#include <string>

namespace glsums {

// Exit-code contract of the CLI: usage 1, resource/convergence 2, verification 3.

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct verification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal-consistency failure (a definitional sum disagreeing with its
// identity form). Signals a bug, never expected in normal operation.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace glsums
