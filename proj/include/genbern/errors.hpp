#pragma once

#include <stdexcept>
#include <string>

namespace genbern {

/// A precondition or argument was invalid (index out of range, bad degree, ...).
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation was refused because the floating-point path would be
/// unreliable (degree cap, conditioning).
class numerical_guard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A certified property (root count, strict eigenvalue chain) did not hold.
/// Seeing one of these means the implementation is wrong, not the input.
class property_violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace genbern
