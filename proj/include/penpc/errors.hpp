#pragma once

#include <stdexcept>

namespace penpc {

// File and format problems (CLI exit code 2).
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failures: singular systems, degenerate fits (CLI exit code 3).
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A conditional-independence test whose degrees of freedom are exhausted
// (n - |K| - 3 < 1). Skeleton algorithms catch this and skip the set.
class insufficient_sample : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

}  // namespace penpc
