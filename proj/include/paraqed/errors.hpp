#pragma once

#include <stdexcept>
#include <string>

namespace paraqed {

/// Base class for every failure raised by the solver.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// A special-function evaluation could not reach the requested tolerance.
class NonConvergence : public Error {
public:
    using Error::Error;
};

class RootNotBracketed : public Error {
public:
    RootNotBracketed(const std::string& what, double lo, double hi)
        : Error(what), lo_(lo), hi_(hi) {}
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

class QuadratureFailure : public Error {
public:
    QuadratureFailure(const std::string& what, double achieved_error)
        : Error(what), achieved_error_(achieved_error) {}
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

/// The discarded tail of a truncated integral or series exceeds the tolerance.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, double estimate)
        : Error(what), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

} // namespace paraqed
