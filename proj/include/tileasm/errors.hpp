#pragma once

#include <stdexcept>
#include <string>

namespace tileasm {

/// Raised when a guarantee that the geometry or assembly results promise is
/// observed to fail at runtime. Reaching one of these always means a bug in
/// this library, never bad user input.
class TheoremViolation : public std::logic_error {
public:
    explicit TheoremViolation(const std::string& what)
        : std::logic_error("theorem violation: " + what) {}
};

/// Malformed or out-of-contract input.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A text file could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace tileasm
