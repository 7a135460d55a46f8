#pragma once

#include <stdexcept>
#include <string>

namespace schrodls {

/// Bad or malformed user input (files, configs, out-of-range options).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parse failure in a structured input file; carries the 1-based line number.
class ParseError : public InputError {
public:
    ParseError(const std::string& msg, long line)
        : InputError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

/// Numerical failure: singular matrix, violated solver invariant, lost positivity.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operation not defined for the requested variant/order combination.
class UnsupportedOperation : public std::invalid_argument {
public:
    explicit UnsupportedOperation(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace schrodls
