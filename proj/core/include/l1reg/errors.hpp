#pragma once

#include <stdexcept>
#include <string>

namespace l1reg {

/// Raised when a numeric parameter lies outside its admissible range.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An index lies outside the finite section.
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// An iterative procedure (bracketing, bisection) failed to reach its target.
class NoConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scenario or command line could not be turned into a valid configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computed quantity contradicts a guaranteed bound.
class ContractViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace l1reg
