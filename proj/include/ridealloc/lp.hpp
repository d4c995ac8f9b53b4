#pragma once

#include <utility>
#include <vector>

#include "ridealloc/types.hpp"

namespace ridealloc::lp {

enum class RowSense { le, eq };

/// A dense maximization LP. Variables are free unless bounded through
/// `lower`/`upper`. Immutable once handed to solve(); concurrent solves of
/// distinct programs are safe.
struct LinearProgram {
  explicit LinearProgram(Index num_vars);

  Index num_vars = 0;
  VecX objective;  // maximize objective . x
  VecX lower;      // -inf for free below
  VecX upper;      // +inf for free above

  struct Row {
    VecX coeffs;
    RowSense sense = RowSense::le;
    double rhs = 0;
  };
  std::vector<Row> rows;

  /// Dump tableaus to stderr while solving.
  bool trace = false;

  void add_le(VecX coeffs, double rhs);
  void add_eq(VecX coeffs, double rhs);
};

enum class SolveStatus { optimal, infeasible, unbounded, numerical };

struct LpSolution {
  SolveStatus status = SolveStatus::numerical;
  VecX primal;     // per original variable
  VecX row_duals;  // per constraint row, in row order
  double objective = 0;
};

/// Two-phase dense primal simplex with Bland's anti-cycling rule. Pivoting is
/// fully deterministic: identical inputs give bit-identical outputs.
LpSolution solve(const LinearProgram& lp);

/// Range of variable `var` over the optimal face, obtained by fixing the
/// objective row at `optimal_value` as an equality and re-solving in both
/// directions. Unbounded directions report +-infinity.
std::pair<double, double> probe_range(const LinearProgram& lp, double optimal_value, Index var);

/// Same, for an arbitrary linear functional over the optimal face.
std::pair<double, double> probe_functional(const LinearProgram& lp, double optimal_value,
                                           const VecX& coeffs);

}  // namespace ridealloc::lp
