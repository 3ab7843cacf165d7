#pragma once

#include <stdexcept>
#include <string>

namespace eprl {

/// Input outside the domain of a formula (zero detuning, resonance, l = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine failed to meet its accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace eprl
