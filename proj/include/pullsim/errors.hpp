#pragma once

#include <stdexcept>
#include <string>

namespace pullsim {

// Bad call: missing trajectory, empty sample set, bad flag.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exact DP or enumeration asked for more than its cost guard allows.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Input file does not match the schema the reader expects.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Samples carry no spread (zero variance) where an estimator needs it.
class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace pullsim
