#pragma once

#include <stdexcept>
#include <string>

namespace dressgate {

// Bad input: non-finite values, violated invariants, malformed config.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Integration, quadrature, extraction or calibration did not converge.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double at_time = 0.0)
      : std::runtime_error(what), time_(at_time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace dressgate
