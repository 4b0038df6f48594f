#pragma once

#include <stdexcept>
#include <string>

namespace lhchi {

/// Bad input: out-of-range sizes, malformed vectors, failed preconditions.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A construction invariant was violated. Indicates a bug, never bad input.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace lhchi
