#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace caa {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model / trajectory / posterior document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A model that violates one or more invariants. Carries the full report.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Observation with zero likelihood under the predicted belief.
class ImpossibleObservation : public Error {
 public:
  using Error::Error;
};

/// Base for the "data cannot have come from this model" family.
class EvidenceError : public Error {
 public:
  EvidenceError(const std::string& what, std::size_t step) : Error(what), step_(step) {}
  /// Time index (0..N) at which the mass vanished.
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Forward pass: the observed action has zero probability at every reachable belief.
class InconsistentAction : public EvidenceError {
 public:
  using EvidenceError::EvidenceError;
};

/// Smoother / oracle: the combined evidence has zero total weight.
class InconsistentEvidence : public EvidenceError {
 public:
  using EvidenceError::EvidenceError;
};

class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace caa
