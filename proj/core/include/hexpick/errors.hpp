#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hexpick {

/// Base class for errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file (gait table, calibration table, scenario, log).
/// Carries the 1-based line number of the offending row.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace hexpick
