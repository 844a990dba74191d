#pragma once

#include <stdexcept>
#include <string>

namespace subsum {

// Argument outside the mathematical domain of an operation (non-prime modulus,
// d not dividing p-1, empty operand, modulus mismatch, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A set that was required to be R-invariant (QR = Q) is not.
class InvarianceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input too large for an exact kernel or an oracle's loop budget.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A theorem's hypothesis does not hold for the given input.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An existing results file could not be parsed; it is never overwritten.
class CorruptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Process exit codes of the command-line driver.
enum ExitCode : int {
  kExitOk = 0,
  kExitClaimFailed = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

}  // namespace subsum
