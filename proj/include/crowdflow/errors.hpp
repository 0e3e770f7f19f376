#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crowdflow {

/// Nonlinear pressure solve ran out of iterations.
/// Carries the sup-norm residual observed after each iterate, initial guess included.
struct NewtonFailure : std::runtime_error {
  NewtonFailure(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

/// A wave outran the stability budget.
struct CflViolation : std::runtime_error {
  CflViolation(const std::string& what, double speed, double bound, double time)
      : std::runtime_error(what), speed(speed), bound(bound), time(time) {}
  double speed;
  double bound;
  double time;
};

/// Direct tridiagonal solve hit a vanishing pivot or a singular cyclic closure.
struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace crowdflow
