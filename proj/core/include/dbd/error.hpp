#ifndef DBD_ERROR_HPP
#define DBD_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dbd {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed formula or template text. `position` is a byte offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : Error(message + " at offset " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Invalid signature definition, unknown connective, or arity mismatch.
class SignatureError : public Error {
 public:
  using Error::Error;
};

// Template with no hole, several holes, or free indices of its own.
class TemplateError : public Error {
 public:
  using Error::Error;
};

// The generating function is linear in its unknown: no square-root singularity.
class NotAdmissibleError : public Error {
 public:
  using Error::Error;
};

// Numerical iteration failed to reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A request exceeds what a table, a guard limit, or a combinatorial class can supply.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace dbd

#endif  // DBD_ERROR_HPP
