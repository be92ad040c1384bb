#pragma once

#include <stdexcept>
#include <string>

namespace gkr {

/// Raised on invalid user input (bad parameters, malformed configuration).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure fails: blow-up, missing bracket,
/// near-defective matrix, resonance, missing orbit.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integration produced a non-finite or exploding state.
class BlowUpError : public NumericError {
 public:
  BlowUpError(const std::string& what, double time)
      : NumericError(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gkr
