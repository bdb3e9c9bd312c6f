#pragma once

#include <stdexcept>
#include <string>

namespace f2dyn {

/// Elements (or points) of two different fields were combined.
class FieldMismatch : public std::invalid_argument {
 public:
  explicit FieldMismatch(const std::string& what) : std::invalid_argument(what) {}
};

class DivisionByZero : public std::domain_error {
 public:
  explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

/// A search exceeded its configured bound (extension degree, point count, ...).
class ResourceLimitExceeded : public std::runtime_error {
 public:
  explicit ResourceLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical invariant failed to hold. Always indicates a bug.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace f2dyn
