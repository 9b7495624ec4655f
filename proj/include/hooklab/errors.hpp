#ifndef HOOKLAB_ERRORS_HPP_
#define HOOKLAB_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hooklab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Division by zero and similar.
struct ArithmeticError : Error {
  using Error::Error;
};

struct PoleError : ArithmeticError {
  using ArithmeticError::ArithmeticError;
};

struct AddressError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position(position) {}
  std::size_t position;
};

// Input beyond a configured size bound.
struct RefusalError : Error {
  using Error::Error;
};

// Invalid family parameters, flags, or oracle specifications.
struct ConfigError : Error {
  using Error::Error;
};

// A labeled tree that is not an increasing labeling of its shape.
struct ValidationError : Error {
  using Error::Error;
};

// Raised when an identity that must hold by construction does not.
struct ConsistencyError : Error {
  using Error::Error;
};

}  // namespace hooklab

#endif  // HOOKLAB_ERRORS_HPP_
