#pragma once

#include <stdexcept>
#include <string>

namespace pslab {

/// A computation would exceed the configured memory or size budget.
class ResourceError : public std::runtime_error {
public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pslab
