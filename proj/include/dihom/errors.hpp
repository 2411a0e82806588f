#pragma once

#include <stdexcept>
#include <string>

namespace dihom {

// Error taxonomy mirrored by the CLI exit codes:
//   check failures -> 1, model errors -> 2, operand errors -> 3, I/O -> 4.

// Bad arguments to a single operation (face index out of range, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// The loaded model violates a structural requirement (improper complex,
// directed loop, equal-length violation, broken face table).
struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal consistency check failed (d∘d != 0 on a verified slice, a face
// chain missing from an exhaustive basis).  Always a bug or corrupt input.
struct IntegrityError : std::logic_error {
  explicit IntegrityError(const std::string& msg) : std::logic_error(msg) {}
};

// Operands of a product do not resolve (mismatched endpoints/degrees).
struct OperandError : std::runtime_error {
  explicit OperandError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dihom
