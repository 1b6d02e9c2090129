#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logdet {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input files (Matrix Market, graph files).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Caller violated a documented precondition (bad argument, domain, shape).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class DimensionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Cholesky found a non-positive pivot. Treated as a property of the input.
class NotPositiveDefinite : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// The computation itself failed: breakdown, non-finite values, failed factorization.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace logdet
