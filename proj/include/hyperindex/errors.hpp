#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "hyperindex/bigint.hpp"

namespace hyperindex {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violated precondition on otherwise well-formed input (wrong modulus,
// disconnected hypergraph, out-of-range vertex, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Malformed input text; line is 1-based.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

// An enumeration was refused because it would produce more than `cap` items.
class CapExceededError : public Error {
public:
    CapExceededError(std::string what, BigInt cardinality)
        : Error(std::move(what)), cardinality_(std::move(cardinality)) {}
    const BigInt& cardinality() const noexcept { return cardinality_; }

private:
    BigInt cardinality_;
};

// Iterative solver ran out of iterations before meeting its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

} // namespace hyperindex
