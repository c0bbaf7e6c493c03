#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rgm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A caller-supplied parameter or label is outside its documented range.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// An iterative method failed to converge or a numerical invariant broke.
class NumericalError : public Error {
public:
  NumericalError(const std::string& what, double residual = 0.0)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

}  // namespace rgm
