#pragma once

#include <stdexcept>
#include <string>

#include "banarith/rational.hpp"

namespace banarith {

enum class ErrorKind {
  Domain,       // precondition on arguments violated
  Unsupported,  // value or ring kind the operation cannot handle
  Validation,   // malformed input data (shape, schema, functoriality, ...)
  NotInIdeal,   // division by (x - p) of an element outside the ideal
  Internal,     // broken internal invariant
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by divide_by_x_minus_p; carries b(p).
class NotInIdealError : public Error {
 public:
  explicit NotInIdealError(Rational remainder)
      : Error(ErrorKind::NotInIdeal, "dividend is not in the ideal (x - p): b(p) = " + to_string(remainder)),
        remainder_(std::move(remainder)) {}

  const Rational& remainder() const noexcept { return remainder_; }

 private:
  Rational remainder_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace banarith
