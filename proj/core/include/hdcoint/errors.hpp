#pragma once

#include <stdexcept>
#include <string>

namespace hdcoint {

// Invalid input: bad dimensions, out-of-range indices, malformed files.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Valid input outside the numeric regime a routine supports
// (e.g. T/N <= k+1, Wachter parameters <= 1).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace hdcoint
