#pragma once

#include <stdexcept>
#include <string>

namespace m0n {

// Raised when the engine contradicts itself: a non-exact division, a
// non-integral coefficient where integrality is guaranteed, or two routes
// to the same quantity that disagree.
class IntegrityError : public std::runtime_error {
 public:
  explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when two truncated values with different caps are combined.
class CapMismatch : public std::invalid_argument {
 public:
  explicit CapMismatch(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace m0n
