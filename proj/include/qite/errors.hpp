#pragma once

#include <stdexcept>

namespace qite {

/// A requested system exceeds the configured memory or size budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The variational integration produced a non-finite update.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qite
