#pragma once

#include <stdexcept>
#include <string>

namespace symkernel {

// Unknown label, malformed root data, or inconsistent multiplicities.
class CatalogueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Bad user configuration: budgets, fit grids, cutoff constants, CSV columns.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested operation has no implementation for this space.
class UnsupportedSpace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace symkernel
