#pragma once

#include <stdexcept>
#include <string>

namespace loewner {

// Error categories; the CLI maps them to exit codes (domain "no" -> 1,
// malformed input -> 2, numerical failure -> 3).
enum class ErrorKind { Domain, Input, Numeric };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

struct InputError : Error {
  explicit InputError(const std::string& w) : Error(ErrorKind::Input, w) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};

struct DimensionMismatch : InputError {
  explicit DimensionMismatch(const std::string& w) : InputError(w) {}
};

struct UnsupportedDimension : InputError {
  explicit UnsupportedDimension(const std::string& w) : InputError(w) {}
};

struct NotPositiveSemidefinite : DomainError {
  explicit NotPositiveSemidefinite(const std::string& w) : DomainError(w) {}
};

struct NotContractive : DomainError {
  explicit NotContractive(const std::string& w) : DomainError(w) {}
};

struct NotInGroup : DomainError {
  explicit NotInGroup(const std::string& w) : DomainError(w) {}
};

struct NotMaximal : DomainError {
  explicit NotMaximal(const std::string& w) : DomainError(w) {}
};

struct NotNegativeDefinite : DomainError {
  explicit NotNegativeDefinite(const std::string& w) : DomainError(w) {}
};

struct NotPsdResult : DomainError {
  explicit NotPsdResult(const std::string& w) : DomainError(w) {}
};

struct DegenerateIntersection : DomainError {
  explicit DegenerateIntersection(const std::string& w) : DomainError(w) {}
};

struct NotAnEllipsoid : DomainError {
  explicit NotAnEllipsoid(const std::string& w) : DomainError(w) {}
};

struct EmptyBoundary : DomainError {
  explicit EmptyBoundary(const std::string& w) : DomainError(w) {}
};

// The two equivalent maximality criteria (or the two uniqueness tests)
// disagreed at the working tolerance; signals borderline numerics.
struct ToleranceInconsistency : NumericError {
  explicit ToleranceInconsistency(const std::string& w) : NumericError(w) {}
};

struct EigenFailure : NumericError {
  explicit EigenFailure(const std::string& w) : NumericError(w) {}
};

}  // namespace loewner
