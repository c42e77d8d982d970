#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace regpat {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A symbol outside the ambient alphabet, or two automata over different alphabets.
class AlphabetError : public Error {
public:
    using Error::Error;
};

/// Text input (regex, pattern DSL, constraint file, JSON) that does not parse.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A 2-counter automaton that violates its well-formedness rules.
class MachineError : public Error {
public:
    using Error::Error;
};

}  // namespace regpat
