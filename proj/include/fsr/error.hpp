#pragma once

#include <stdexcept>
#include <string>

namespace fsr {

// Operands that do not belong together: elements of different groups,
// malformed coordinates, a multiset that is not a subset of another.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An argument outside the mathematical domain of an operation
// (even modulus where odd is required, n in O_FS where a non-member is needed).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The operation is not defined for this kind of group (e.g. enumerating Z).
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured cap or search budget would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed. Never expected to fire.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fsr
