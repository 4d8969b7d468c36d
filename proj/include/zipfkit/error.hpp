#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zipfkit {

// All library failures derive from Error so callers can catch one type; the
// concrete subclass decides the CLI exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller passed a value outside an operation's domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed external data (TSV rows, numbers).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Input bytes are not valid UTF-8.
class DecodeError : public Error {
 public:
  DecodeError(const std::string& what, std::size_t byte_offset)
      : Error("byte offset " + std::to_string(byte_offset) + ": " + what),
        byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Well-formed data violating a value constraint (e.g. non-positive count).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Too few usable rows for an estimator.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Data that leaves a parameter unidentifiable (e.g. all frequencies equal).
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

// Requested series does not converge.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace zipfkit
