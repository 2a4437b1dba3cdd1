#pragma once

#include <stdexcept>
#include <string>

namespace ringage {

/// Precondition violation on caller-supplied parameters.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Request is valid in principle but exceeds a configured search or memory cap.
class CapacityExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integer arithmetic would wrap.
class ArithmeticOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

}  // namespace ringage
