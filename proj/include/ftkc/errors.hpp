#pragma once

#include <stdexcept>
#include <string>

namespace ftkc {

// Malformed or out-of-contract user input (bad JSON, non-metric distances,
// alpha >= k, unsupported capacity profile).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal guarantee failed. Reaching one of these means a bug upstream,
// never a property of the instance.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An exact oracle was asked to run beyond its enumeration bounds.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ftkc
