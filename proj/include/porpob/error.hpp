#pragma once

#include <stdexcept>
#include <string>

namespace porpob {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (e.g. p not in [0,1]).
class DomainError : public Error {
public:
    using Error::Error;
};

// Input data or arguments violate a documented invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Reference to an action or label that does not exist.
class KeyError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Malformed file content. Carries the 1-based line number when known (0 otherwise).
class FormatError : public ValidationError {
public:
    FormatError(const std::string& what, std::size_t line = 0)
        : ValidationError(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Results that should be impossible by construction (e.g. lower bound above upper).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace porpob
