#pragma once

#include <stdexcept>
#include <string>

namespace navsim {

/// Evaluation outside the domain of a map (inside an obstacle, at a pole,
/// beyond the outer boundary).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid or infeasible scenario: overlapping obstacles, destination in
/// collision, neighborhoods that cannot be made disjoint, parse failures.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& what, int line = -1)
      : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  /// 1-based source line, or -1 when not tied to a file location.
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// NaN or divergence during integration.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace navsim
