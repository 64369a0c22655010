#pragma once

#include <stdexcept>
#include <string>

namespace gbd {

/// Coarse failure classes; the CLI maps them onto exit codes.
enum class ErrorCategory {
  validation,  // malformed input, structural mismatch, violated precondition
  exhausted,   // no configured chain level meets a requested bound
  size_cap,    // an exhaustive set product would exceed the configured cap
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorCategory::validation, what) {}
};

/// Operands from different groups (kind or rank mismatch).
class StructuralError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class LevelOutOfRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SizeCapExceeded : public Error {
 public:
  explicit SizeCapExceeded(const std::string& what)
      : Error(ErrorCategory::size_cap, what) {}
};

class ExhaustedError : public Error {
 public:
  explicit ExhaustedError(const std::string& what)
      : Error(ErrorCategory::exhausted, what) {}
};

}  // namespace gbd
