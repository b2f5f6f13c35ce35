#pragma once

#include <stdexcept>
#include <string>

namespace hyperrig {

/// Input text could not be parsed; carries the location of the first error.
class ParseError final : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error(what), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// Structurally or numerically inadmissible input (mismatched shapes,
/// non-Hermitian data beyond tolerance, generators that do not generate, ...).
class ValidationError final : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A cross-check the construction itself guarantees has failed; indicates a
/// bug, not a property of the input.
class InternalError final : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace hyperrig
