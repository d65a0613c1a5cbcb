#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vlasov {

// Invalid grid, scheme or run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two objects that must share a grid do not.
class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Charge density whose mean is not the unit background.
class CompatibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Snapshot header/payload problems.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature or ODE integration did not reach its tolerance.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments outside the mathematical domain of a function (log of a
// nonpositive number and the like).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace vlasov
