#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad table, bad coordinate, mismatched operands).
class InputError : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed its configured cap; raised instead of guessing.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    ParseError(std::size_t position, const std::string& what)
        : InputError("parse error at " + std::to_string(position) + ": " + what), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace mvl
