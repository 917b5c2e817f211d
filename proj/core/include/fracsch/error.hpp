#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace fracsch {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument or configuration outside the documented domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Container sizes that do not agree (operator vs vector, grid vs field).
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Gamma function evaluated at a non-positive integer.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Argument outside the sector where the asymptotic expansion is used.
class SectorError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Power series requested beyond the radius where it can be summed accurately.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Resolvent requested at (or numerically at) an eigenvalue.
class SpectrumError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Fixed-point iteration whose increments keep growing.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// Fixed-point iterate left the admissible ball.
class BallEscapeError : public Error {
public:
    using Error::Error;
};

using WarningHandler = std::function<void(const std::string& where, const std::string& message)>;

/// Installs a process-wide warning sink and returns the previous one.
/// The default sink writes to stderr.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(const std::string& where, const std::string& message);

}  // namespace fracsch
