#pragma once

#include <stdexcept>
#include <string>

namespace dpso {

// Base for every error raised by the library. Callers that only care about
// "something in dpso failed" catch this; the subclasses name the condition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownFunction : public Error {
 public:
  explicit UnknownFunction(const std::string& name)
      : Error("unknown benchmark function '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class DimensionTooSmall : public Error {
 public:
  using Error::Error;
};

class BoundsInverted : public Error {
 public:
  using Error::Error;
};

class NonPositiveBandwidth : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class NonFiniteObjective : public Error {
 public:
  using Error::Error;
};

class EmptyCell : public Error {
 public:
  using Error::Error;
};

class MissingPair : public Error {
 public:
  using Error::Error;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dpso
