#pragma once

#include <stdexcept>
#include <string>

namespace twopoint {

/// Problem constants violate the hypotheses required by the requested operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The free parameters leave no admissible positive delta.
class InfeasibleError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class MeshError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Vector/matrix sizes disagree, or a size limit of an operation is exceeded.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::runtime_error {
public:
  SingularMatrixError(const std::string& what, double dt)
      : std::runtime_error(what), dt_(dt) {}
  double dt() const noexcept { return dt_; }

private:
  double dt_;
};

class TooFewSamples : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A decay fit window kept too few samples with resolvable energy.
class InsufficientDataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Smooth data does not carry a derivative the recurrence needs.
class OrderError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class UnknownFormError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed scenario file or inconsistent scenario keys.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace twopoint
