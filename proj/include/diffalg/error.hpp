#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diffalg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain (zero input,
/// non-coprime split, singular matrix, invalid q, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A solver hit the configured degree cap before its certified bound applied.
class BoundExceededError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed (e.g. a certificate did not verify).
/// Seeing one of these is a bug.
class InvariantError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace diffalg
