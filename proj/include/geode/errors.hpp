#pragma once

#include <stdexcept>
#include <string>

namespace geode {

class GeodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation would exceed the configured term budget.
class ResourceLimitError : public GeodeError {
 public:
  using GeodeError::GeodeError;
};

// An exact identity that must hold failed; signals an arithmetic bug.
class InconsistencyError : public GeodeError {
 public:
  using GeodeError::GeodeError;
};

// Recurrence system used without a passing verification record, or a
// corrupt/tampered recurrence file.
class IntegrityError : public GeodeError {
 public:
  using GeodeError::GeodeError;
};

// A recurrence step produced a non-integer value.
class NonIntegralStepError : public GeodeError {
 public:
  using GeodeError::GeodeError;
};

class InsufficientDataError : public GeodeError {
 public:
  using GeodeError::GeodeError;
};

class ReconstructionError : public GeodeError {
 public:
  using GeodeError::GeodeError;
};

// An input file is missing or unreadable.
class FileError : public GeodeError {
 public:
  using GeodeError::GeodeError;
};

}  // namespace geode
