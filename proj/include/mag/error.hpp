#pragma once

#include <stdexcept>
#include <string>

namespace mag {

// Base class for every error thrown by the toolkit.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Division by an identically zero expression or polynomial.
struct DivisionByZeroError : Error {
    explicit DivisionByZeroError(const std::string& msg) : Error(msg) {}
};

// A sample point hit a pole of a denominator; callers resample.
struct PoleError : Error {
    explicit PoleError(const std::string& msg) : Error(msg) {}
};

// Chart mismatches, unknown coordinates, wrong degrees, violated preconditions.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A constructed object failed one of its structural invariants
// (contact condition, independence mod theta, span equality, ...).
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Request outside the supported input class (elliptic factorization,
// non-square discriminant, normal form for a non-integrable system).
struct UnsupportedError : Error {
    explicit UnsupportedError(const std::string& msg) : Error(msg) {}
};

// Lexing/parsing failure with a source location.
struct ParseError : Error {
    int line;
    int column;
    std::string token;

    ParseError(int line_, int column_, const std::string& msg, std::string token_)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(column_) +
                ": " + msg + (token_.empty() ? "" : " (near '" + token_ + "')")),
          line(line_), column(column_), token(std::move(token_)) {}
};

} // namespace mag
