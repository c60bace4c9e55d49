#pragma once

#include <stdexcept>
#include <string>

namespace hyperfree {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroPolynomial : public Error {
public:
    ZeroPolynomial() : Error("operation undefined for the zero polynomial") {}
};

class MixedQuadraticField : public Error {
public:
    MixedQuadraticField(long d1, long d2)
        : Error("cannot combine elements of Q(sqrt(" + std::to_string(d1) + ")) and Q(sqrt(" +
                std::to_string(d2) + "))") {}
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class ZeroColumn : public Error {
public:
    explicit ZeroColumn(int label)
        : Error("column " + std::to_string(label) + " is zero"), label(label) {}
    int label;
};

class ProportionalColumns : public Error {
public:
    ProportionalColumns(int i, int j)
        : Error("columns " + std::to_string(i) + " and " + std::to_string(j) + " are proportional"),
          first(i), second(j) {}
    int first;
    int second;
};

class NotEssential : public Error {
public:
    NotEssential() : Error("arrangement is not essential (rank < 3)") {}
};

class UnknownLabel : public Error {
public:
    explicit UnknownLabel(int label)
        : Error("unknown hyperplane label " + std::to_string(label)), label(label) {}
    int label;
};

class DegreeMismatch : public Error {
public:
    DegreeMismatch(int total, int n)
        : Error("derivation degrees sum to " + std::to_string(total) + " but the arrangement has " +
                std::to_string(n) + " hyperplanes") {}
};

class InvalidLattice : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line(line), column(column) {}
    int line;
    int column;
};

/// Raised when an internal consistency check derived from a theorem fails.
/// Such a failure indicates a bug in this library, never a property of the input.
class InternalAssertion : public Error {
public:
    using Error::Error;
};

} // namespace hyperfree
