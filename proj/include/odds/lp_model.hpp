#pragma once

// Generic linear programs plus the builders for the formulations of the
// stopping problem:
//
//   flow formulation (max):  y_1..y_n >= 0, z_0..z_n free
//       Cap_i    y_i - p_i z_{i-1} <= 0
//       Cons_i   y_i + z_i - z_{i-1} = 0
//       Source   z_0 = 1
//
//   value LP "P" (min w_0):  w_0..w_n free
//       Stop_i   w_{i-1} - q_i w_i >= p_i R_i
//       Cont_i   w_{i-1} - w_i >= 0
//       Terminal w_n = 0
//
//   dual of the flow LP "P1" (min w_0):  w free, alpha_1..alpha_n >= 0
//       Stop_i   w_i + alpha_i / p_i >= R_i
//       Link_i   w_{i-1} - w_i - alpha_i = 0
//       Terminal w_n = 0
//
//   reduced secretary LP (max sum (i/n) y_i):  y >= 0
//       Sec_i    i y_i + sum_{k<i} y_k <= 1
//
// Column and row order always follows the listing above, which keeps exports
// deterministic.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "odds/core.hpp"

namespace odds::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { Maximize, Minimize };
enum class Relation { LessEqual, Equal, GreaterEqual };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  double objective = 0.0;

  bool is_free() const { return lower == -kInf && upper == kInf; }
};

struct Term {
  std::size_t var;
  double coef;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

class LpProblem {
 public:
  explicit LpProblem(Sense sense, std::string name = "LP");

  /// Throws InvalidArgument on a duplicate name, lower > upper or an
  /// infinite bound on the wrong side.
  std::size_t add_variable(std::string name, double lower, double upper, double objective = 0.0);

  /// Throws InvalidArgument on a duplicate name, an undeclared or repeated
  /// variable, or a non-finite coefficient.
  std::size_t add_constraint(std::string name, std::vector<Term> terms, Relation relation,
                             double rhs);

  Sense sense() const noexcept { return sense_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Variable>& variables() const noexcept { return vars_; }
  const std::vector<Constraint>& constraints() const noexcept { return rows_; }
  std::size_t num_variables() const noexcept { return vars_.size(); }
  std::size_t num_constraints() const noexcept { return rows_.size(); }

  std::optional<std::size_t> find_variable(const std::string& name) const;
  std::optional<std::size_t> find_constraint(const std::string& name) const;

  double objective_value(std::span<const double> x) const;
  /// Activity (left-hand side) of every row at x.
  std::vector<double> activities(std::span<const double> x) const;
  /// Largest violation over rows and bounds at x; 0 for a feasible point.
  double max_violation(std::span<const double> x) const;

 private:
  Sense sense_;
  std::string name_;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::unordered_map<std::string, std::size_t> var_index_;
  std::unordered_map<std::string, std::size_t> row_index_;
};

enum class DualForm { P1, P };

LpProblem build_flow_lp(const Instance& inst);
LpProblem build_dual_lp(const Instance& inst, DualForm form);
/// Throws EmptyInstance when n = 0.
LpProblem build_secretary_reduced_lp(std::size_t n);

/// Column vector of the flow LP for a flow (y_1..y_n, z_0..z_n).
std::vector<double> flow_lp_point(const FlowSolution& flow);
/// Reads (y, z) back out of a flow LP solution vector.
FlowSolution flow_from_lp_point(std::size_t n, std::span<const double> x);
/// Column vector of the P form for values w_0..w_n.
std::vector<double> dual_p_point(const ValueVector& w);
/// Reads w out of a P or P1 solution vector.
ValueVector values_from_dual_point(std::size_t n, std::span<const double> x);

/// The multipliers eliminated when P1 collapses to P.
struct DualAuxiliary {
  std::vector<double> alpha;
};

/// alpha_i = w_{i-1} - w_i.
DualAuxiliary auxiliary_from_values(const ValueVector& w);
/// Column vector of the P1 form for (w, alpha).
std::vector<double> dual_p1_point(const ValueVector& w, const DualAuxiliary& aux);

}  // namespace odds::lp
