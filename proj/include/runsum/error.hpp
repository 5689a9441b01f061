#pragma once

#include <stdexcept>
#include <string>

namespace runsum {

// Precondition violations on public entry points.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The normal equations of a piecewise-constant fit are singular, which only
// happens for empty or duplicated intervals.
class DegeneratePartition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every slice radius floors to zero at the requested sigma. Such small blurs
// are better served by a direct 3-tap convolution.
class DegenerateScale : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The widest slice does not fit inside the signal.
class KernelTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace runsum
