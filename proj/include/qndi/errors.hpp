#pragma once

#include <stdexcept>
#include <string>

namespace qndi {

/// Invalid parameters or violated preconditions. The CLI maps this to exit
/// code 2 before any computation or output starts.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure detected at run time (ill-conditioned solve, loss of
/// positive definiteness, polynomial blow-up). Maps to exit code 3; sweeps
/// record the affected point as null instead of aborting.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested success probability cannot be bracketed by the search interval.
/// Carries the probabilities achieved at both ends of the bracket.
class UnreachableTargetError : public NumericError {
 public:
  UnreachableTargetError(double target, double ps_low, double ps_high)
      : NumericError("target success probability " + std::to_string(target) +
                     " outside reachable range [" + std::to_string(ps_low) +
                     ", " + std::to_string(ps_high) + "]"),
        target_(target),
        ps_low_(ps_low),
        ps_high_(ps_high) {}

  double target() const { return target_; }
  double ps_low() const { return ps_low_; }
  double ps_high() const { return ps_high_; }

 private:
  double target_;
  double ps_low_;
  double ps_high_;
};

}  // namespace qndi
