#pragma once

#include <stdexcept>
#include <string>

namespace ovrv {

// Invalid argument or out-of-domain input (negative frequency, NaN state, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent data: CSV schema, non-uniform sampling, empty series.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quantity undefined for the given parameters (e.g. lambda2 with f_v = 0).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative numerical procedure failed to produce a usable answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ovrv
