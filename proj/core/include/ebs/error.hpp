#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ebs {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed `.fol` text. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// A configured size limit would be exceeded. `needed` is the size that was requested
/// (or a lower bound on it when the exact figure overflows).
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what, std::uint64_t needed, std::uint64_t cap)
        : Error(what + " (needed " + std::to_string(needed) + ", cap " + std::to_string(cap) + ")"),
          needed_(needed), cap_(cap) {}
    std::uint64_t needed() const noexcept { return needed_; }
    std::uint64_t cap() const noexcept { return cap_; }

private:
    std::uint64_t needed_;
    std::uint64_t cap_;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A consistency check inside an algorithm failed. Always a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace ebs
