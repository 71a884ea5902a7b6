#pragma once

#include <stdexcept>
#include <string>

namespace lslab {

// Every failure raised by the library derives from Error. The CLI maps the
// concrete types onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ArithmeticError : public Error {
 public:
  using Error::Error;
};

class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// An exact identity that must hold did not. Always an implementation bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class CertificationError : public Error {
 public:
  CertificationError(std::string clause, const std::string& detail)
      : Error("root certification failed [" + clause + "]: " + detail),
        clause_(std::move(clause)) {}

  const std::string& clause() const noexcept { return clause_; }

 private:
  std::string clause_;
};

class UnimodalityViolation : public Error {
 public:
  using Error::Error;
};

class PrecisionError : public Error {
 public:
  using Error::Error;
};

class DegenerateVarianceError : public Error {
 public:
  using Error::Error;
};

class ConditionViolation : public Error {
 public:
  using Error::Error;
};

class InsufficientCumulantsError : public Error {
 public:
  using Error::Error;
};

class CacheError : public Error {
 public:
  using Error::Error;
};

}  // namespace lslab
