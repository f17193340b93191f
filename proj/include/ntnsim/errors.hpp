#pragma once

#include <stdexcept>
#include <string>

namespace ntnsim {

// Raised when an argument lies outside the mathematical domain of an
// operation (e.g. a cap wider than a hemisphere, a beam past the horizon).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Raised for malformed or inconsistent configuration input.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ntnsim
