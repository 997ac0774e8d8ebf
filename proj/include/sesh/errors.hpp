#pragma once

#include <stdexcept>
#include <string>

namespace sesh {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

/// A square root that does not live in Q(√2,√3).
class NotRepresentable : public Error {
public:
    using Error::Error;
};

class NegativeInput : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) +
                ", got " + std::to_string(got)) {}
};

class Degenerate : public Error {
public:
    using Error::Error;
};

class PreconditionFailed : public Error {
public:
    using Error::Error;
};

class ZeroClass : public Error {
public:
    ZeroClass() : Error("the zero class spans no ray") {}
};

class EmptyCatalogue : public Error {
public:
    using Error::Error;
};

class UnknownSurface : public Error {
public:
    explicit UnknownSurface(const std::string& name)
        : Error("unknown built-in surface '" + name + "'") {}
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// Rejection of a surface model or curve record; names the violated
/// invariant and where it was found.
class ValidationError : public Error {
public:
    ValidationError(std::string invariant, std::string location, const std::string& detail)
        : Error(invariant + " at " + location + ": " + detail),
          invariant_(std::move(invariant)),
          location_(std::move(location)) {}

    const std::string& invariant() const noexcept { return invariant_; }
    const std::string& location() const noexcept { return location_; }

private:
    std::string invariant_;
    std::string location_;
};


/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace sesh
