#pragma once

#include <stdexcept>
#include <string>

namespace daeidx {

// malformed input: bad expression text, bad JSON, violated preconditions (exit 2)
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// the mu-sequence failed to stabilize within the search cap, which signals a
// violated genericity hypothesis or an undersized --kmax (exit 3)
struct StabilizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// an exact-rank request exceeded the desk-scale resource cap; callers fall
// back to the probabilistic route with a tightened epsilon
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace daeidx
