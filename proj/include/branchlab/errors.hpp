#pragma once

#include <stdexcept>
#include <string>

namespace branchlab {

/// Input outside the mathematical domain of an operation (p <= -lambda, gamma <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure could not deliver its postcondition.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shooting bracket without a sign change of the matching function.
class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The Dirichlet wall at p_max sits too close to the requested levels.
class WallTooCloseError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace branchlab
