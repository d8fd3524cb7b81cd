#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An EOS evaluation produced a non-finite value, or was asked about a
/// thermodynamic point outside its domain.
class EosError : public Error {
 public:
  EosError(const std::string& what, double tau, double e)
      : Error(what + " (tau=" + std::to_string(tau) + ", e=" + std::to_string(e) + ")"),
        tau_(tau),
        e_(e) {}

  double tau() const noexcept { return tau_; }
  double e() const noexcept { return e_; }

 private:
  double tau_;
  double e_;
};

/// Bulk modulus is not positive: the state has left the region where the
/// system is hyperbolic.
class HyperbolicityError : public EosError {
 public:
  using EosError::EosError;
};

/// Specific internal energy is below the admissibility floor.
class InadmissibleStateError : public EosError {
 public:
  using EosError::EosError;
};

/// Argument outside the domain of a mathematical function (e.g. a pressure
/// below the vacuum bound of a side's expansion curve).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A lower bound on the fundamental derivative cannot be certified.
class BoundUnavailableError : public Error {
 public:
  using Error::Error;
};

/// Time step violates the positivity of the convex-combination weights.
class TimeStepError : public Error {
 public:
  using Error::Error;
};

/// A state produced by the update left the invariant set.
class InvariantViolation : public Error {
 public:
  InvariantViolation(const std::string& what, std::size_t node, int stage = -1)
      : Error(what), node_(node), stage_(stage) {}

  std::size_t node() const noexcept { return node_; }
  int stage() const noexcept { return stage_; }

 private:
  std::size_t node_;
  int stage_;
};

/// The run driver hit its step limit before reaching the final time.
class StepLimitError : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration (CLI flag, JSON value, parameter record).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace idp
