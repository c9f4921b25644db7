#pragma once

#include <stdexcept>
#include <string>

namespace wavelab {

/// Invalid or inconsistent configuration: bad grid size, negative Sobolev index, ...
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input data that fails a structural check (non-even symbol table, non-finite samples).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the domain of a functional (mu = 0, penalizer pole, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace wavelab
