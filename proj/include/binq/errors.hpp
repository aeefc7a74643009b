#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace binq {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated precondition or broken invariant on a call.
class ContractError : public Error {
public:
  using Error::Error;
};

// Input whose statistics make the requested operation meaningless
// (e.g. a zero-variance component).
class DegenerateInputError : public Error {
public:
  using Error::Error;
};

// Operation refused for this input shape (enumeration above the cap,
// multi-stage norm2 analytics).
class UnsupportedError : public Error {
public:
  using Error::Error;
};

// Malformed, truncated, or inconsistent BINQ stream.
class FormatError : public Error {
public:
  enum class Kind { Io, BadMagic, BadVersion, Truncated, Invariant };

  FormatError(Kind k, std::size_t pos, const std::string& msg)
      : Error(msg + " (at byte " + std::to_string(pos) + ")"), kind(k), position(pos) {}

  Kind kind;
  std::size_t position;
};

}  // namespace binq
