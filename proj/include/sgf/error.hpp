#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgf {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Input violates a structural invariant (self-loop, out-of-range node, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Operation is undefined for this input (e.g. |K| = 0).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// A generator could not realize the requested configuration.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace sgf
