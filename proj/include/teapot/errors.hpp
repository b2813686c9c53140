#pragma once

#include <stdexcept>
#include <string>

namespace teapot {

/// Input outside the mathematical domain of an operation (bad beta, word not
/// admissible, modulus out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A stated hypothesis of a construction does not hold. The message names the
/// failing clause.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Something that the theory guarantees did not happen. Signals a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace teapot
