#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsf {

/// Base of every error raised by the library. `kind()` is the short
/// machine-readable tag the CLI prints after "error: ".
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept = 0;
};

class DomainError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "domain"; }
};

class ShapeError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "shape"; }
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
    const char* kind() const noexcept override { return "parse"; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Raised by the highest-weight decomposition when a weight space has no
/// numerically clean kernel.
class NumericalDegeneracy : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "numerical-degeneracy"; }
};

}  // namespace qsf
