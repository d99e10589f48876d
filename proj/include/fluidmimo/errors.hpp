#pragma once

#include <stdexcept>
#include <string>

namespace fluidmimo {

/// Bad caller input: non-finite arguments, nonpositive sizes, infeasible specs.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A value that should satisfy a structural invariant (symmetry, unit diagonal) does not.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Requested configuration is outside what an approximation supports (e.g. N != M).
class UnsupportedConfiguration : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Correlation matrix too close to singular to invert.
class SingularCorrelation : public std::runtime_error {
public:
  SingularCorrelation(const std::string& what, double eigenvalue)
      : std::runtime_error(what), eigenvalue_(eigenvalue) {}

  double eigenvalue() const noexcept { return eigenvalue_; }

private:
  double eigenvalue_;
};

}  // namespace fluidmimo
