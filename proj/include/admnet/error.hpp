#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace admnet {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A brute-force search was asked to run past its configured size bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

/// Structural validation failed (incompatible edges, bad partition, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace admnet
