#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace ridealloc {

using Index = Eigen::Index;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;
using Point = Eigen::Vector2d;

/// Centralized numeric tolerances shared by the LP core and the solvers.
namespace tol {
inline constexpr double feasibility = 1e-8;       // max allowed constraint residual
inline constexpr double optimality = 1e-9;        // simplex reduced-cost threshold
inline constexpr double duality = 1e-7;           // scaled strong-duality gap
inline constexpr double duplicate_excess = 1e-7;  // clustering width for tight rows
inline constexpr double generation = 1e-9;        // violation threshold for new rows
inline constexpr double uniqueness = 1e-7;        // probe-range collapse width
inline constexpr double efficiency = 1e-7;        // allocation-total vs grand cost
}  // namespace tol

/// Input could not be parsed; `line` is 1-based, or 0 when not line-oriented.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : std::move(message)),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Operation called outside its domain (empty coalition, incomplete table, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Instance is larger than the exact solvers support.
class ScaleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric self-check failed inside a solver.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ridealloc
