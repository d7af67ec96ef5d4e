#pragma once

#include <stdexcept>

namespace nlvrp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Correlation or game parameters outside their feasible region.
class InvalidParams : public Error {
public:
    using Error::Error;
};

// A table whose outcome marginals depend on the other party's input.
class SignalingInput : public Error {
public:
    using Error::Error;
};

// Negative entries or unnormalized rows.
class NotAProbabilityTable : public Error {
public:
    using Error::Error;
};

// No mixture of deterministic strategies reproduces the behavior.
class NotLocal : public Error {
public:
    using Error::Error;
};

// Instance larger than the configured tensor cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

// Scalar argument outside the documented domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Malformed input file or config.
class InputError : public Error {
public:
    using Error::Error;
};

// Scan region containing no feasible grid point.
class EmptyRegion : public Error {
public:
    using Error::Error;
};

} // namespace nlvrp
