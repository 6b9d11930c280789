#pragma once

#include <stdexcept>

namespace addrand {

/// A configured resource cap (branch count, sieve size) would be exceeded.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace addrand
