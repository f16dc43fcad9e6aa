#pragma once

#include <stdexcept>

namespace qwalk {

/// Malformed user input: bad edge lists, unknown generator names, unreadable files.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A mathematical hypothesis of the requested operation is violated
/// (graph not regular, degree below 2, disconnected input, ...).
struct precondition_error : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace qwalk
