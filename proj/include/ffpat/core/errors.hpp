#ifndef FFPAT_CORE_ERRORS_HPP
#define FFPAT_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ffpat {

/// Shape or space mismatch between operators, fields, or data.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Invalid user-facing configuration (grid sizes, stability bounds, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values or unbounded growth during an iteration or time loop.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, long step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  long step() const noexcept { return step_; }

 private:
  long step_;
};

/// An inner solve failed to converge, or an algorithm broke down.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ffpat

#endif  // FFPAT_CORE_ERRORS_HPP
