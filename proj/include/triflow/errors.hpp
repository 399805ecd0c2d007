#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace triflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed graph, flow certificate or pattern text.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string & what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An operation was called with inputs that violate its stated contract.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A structural lemma failed to hold on its input. Either the input was not
/// what the caller claimed, or there is a bug.
class LemmaViolation : public Error {
public:
    using Error::Error;
};

/// An exponential routine ran past its size gate or node budget.
class GatedError : public Error {
public:
    using Error::Error;
};

}  // namespace triflow
