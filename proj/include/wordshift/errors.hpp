#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wordshift {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed caller input: bad arguments, bad option values, empty graph input.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

// A line-oriented input file could not be parsed.
class ParseError : public Error {
public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// The requested quantity is mathematically undefined for the given inputs
// (empty distribution, KLD with unsupported vocabulary, diverging powers).
class DomainError : public Error {
public:
  using Error::Error;
};

}  // namespace wordshift
