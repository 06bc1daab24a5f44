#pragma once

// Certificates for the pair (flow LP, value LP): feasibility of each side,
// the duality gap, and complementary slackness under alpha_i = w_{i-1} - w_i.

#include <cstddef>
#include <vector>

#include "odds/core.hpp"

namespace odds::duality {

/// Largest residual per constraint family of the flow LP.
struct PrimalViolation {
  double conservation = 0.0;   // max |y_i + z_i - z_{i-1}|
  double capacity = 0.0;       // max(0, y_i - p_i z_{i-1})
  double source = 0.0;         // |z_0 - 1|
  double nonnegativity = 0.0;  // max(0, -y_i)

  double max() const;
};

/// Largest residual per constraint family of the value LP.
struct DualViolation {
  double stop = 0.0;      // max(0, q_i w_i + p_i R_i - w_{i-1})
  double cont = 0.0;      // max(0, w_i - w_{i-1})
  double terminal = 0.0;  // |w_n|

  double max() const;
};

PrimalViolation check_primal_feasible(const Instance& inst, const FlowSolution& flow);
DualViolation check_dual_feasible(const Instance& inst, const ValueVector& w);

/// Violations of the P1 rows for (w, alpha): w_i + alpha_i / p_i >= R_i,
/// w_{i-1} - w_i - alpha_i = 0, w_n = 0, alpha_i >= 0. Largest residual.
double check_p1_feasible(const Instance& inst, const ValueVector& w,
                         const std::vector<double>& alpha);

/// w_0 - sum R_i y_i. Both sides must be feasible within tol, otherwise
/// Infeasible is thrown.
double duality_gap(const Instance& inst, const FlowSolution& flow, const ValueVector& w,
                   double tol = 1e-9);

enum class SlackPair {
  Stop,      // y_i > 0 forces w_{i-1} = q_i w_i + p_i R_i
  Continue,  // p_i z_{i-1} - y_i > 0 forces alpha_i = w_{i-1} - w_i = 0
};

const char* to_string(SlackPair pair);

struct SlackViolation {
  std::size_t index;  // 1-based observation
  SlackPair pair;
  double magnitude;   // |product| / scale
};

struct SlacknessReport {
  double scale = 1.0;  // max(1, w_0)
  double tolerance = 1e-7;
  double max_stop = 0.0;
  double max_continue = 0.0;
  std::vector<SlackViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// For each i checks y_i (w_{i-1} - q_i w_i - p_i R_i) and
/// (p_i z_{i-1} - y_i)(w_{i-1} - w_i) against tolerance * scale.
SlacknessReport complementary_slackness(const Instance& inst, const FlowSolution& flow,
                                        const ValueVector& w, double tolerance = 1e-7,
                                        double feasibility_tol = 1e-9);

}  // namespace odds::duality
