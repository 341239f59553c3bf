#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace linevo {

/// Bad caller input: dimensions, non-positive scales, unknown ids.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// API misuse that indicates a programming error (stepping a finished
/// episode, updating a frozen normalizer).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The search distribution became unusable (non-finite entries, loss of
/// positive definiteness). Runs abort on this; nothing is repaired.
class NumericalDegeneracy : public std::runtime_error {
 public:
  NumericalDegeneracy(std::uint64_t generation, const std::string& what)
      : std::runtime_error("generation " + std::to_string(generation) + ": " + what),
        generation_(generation) {}

  std::uint64_t generation() const noexcept { return generation_; }

 private:
  std::uint64_t generation_;
};

/// A reconstructed sampling context disagrees with the master's digest.
class DesyncError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidObservation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace linevo
