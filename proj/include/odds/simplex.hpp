#pragma once

// Dense two-phase tableau simplex with Bland's rule.
//
// Bounds are folded into the tableau: finite lower bounds shift the column,
// upper-bounded-only columns are mirrored, free columns are split into a
// positive and a negative part, and finite upper bounds on lower-bounded
// columns become extra rows. Every constraint row keeps a unit column (its
// slack or its artificial) so the final reduced costs expose the row duals.

#include <cstddef>
#include <vector>

#include "odds/lp_model.hpp"

namespace odds::lp {

enum class Status { Optimal, Infeasible, Unbounded };

const char* to_string(Status status);

struct LpSolution {
  Status status = Status::Infeasible;
  /// Per variable, in declaration order. Empty unless optimal.
  std::vector<double> primal;
  double objective = 0.0;
  /// Per constraint: the rate of change of the optimal objective with the
  /// right-hand side (shadow price), in the problem's own sense. For a
  /// maximization, <= rows have duals >= 0; for a minimization, >= rows do.
  std::vector<double> duals;
  /// c_j - A_j^T duals, per variable.
  std::vector<double> reduced_costs;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
  /// 0 picks a limit proportional to the tableau size.
  std::size_t max_iterations = 0;
};

/// Solves prob. Infeasible and unbounded problems are reported through the
/// status; loss of accuracy (a final point that misses its own constraints,
/// which is what a near-singular basis produces) and the iteration limit
/// throw odds::Error(NumericalFailure).
LpSolution solve_lp(const LpProblem& prob, const SimplexOptions& options = {});

/// KKT residuals of an optimal solution, all in absolute terms.
struct OptimalityReport {
  double primal_residual = 0.0;    // row and bound violations
  double dual_sign_residual = 0.0; // duals with the wrong sign for their row
  double reduced_cost_residual = 0.0;  // reduced costs that could still improve
  double complementarity = 0.0;    // max |dual_i * slack_i| and |d_j * (x_j - bound)|

  double max() const;
};

OptimalityReport check_optimality(const LpProblem& prob, const LpSolution& sol);

}  // namespace odds::lp
