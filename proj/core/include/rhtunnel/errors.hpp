#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rhtunnel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configuration value is missing, malformed or out of range.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The tunnel does not lie strictly below the ground surface.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// A point lies outside the domain of an operation (poles, annulus bounds).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A quantity that must be real came out with a non-negligible imaginary part.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A linear system is singular or too ill-conditioned to trust.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double condition)
        : Error(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

/// The iteration hit its repetition cap before the increments fell below epsilon.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> history)
        : Error(what), history_(std::move(history)) {}
    const std::vector<double>& history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

}  // namespace rhtunnel
