#pragma once

// Policies and flows describe the same thing. A policy induces the flow
//   z_0 = 1,  z_i = z_{i-1} (q_i + p_i pi_i),  y_i = z_{i-1} p_i (1 - pi_i),
// and every flow that satisfies
//   y_i <= p_i z_{i-1},  y_i + z_i = z_{i-1},  z_0 = 1,  y_i >= 0
// is induced by pi_i = 1 - y_i / (p_i z_{i-1}).

#include "odds/core.hpp"

namespace odds::bridge {

/// Throws DimensionMismatch when the policy length differs from n.
FlowSolution policy_to_flow(const Instance& inst, const Policy& pol);

/// Inverts policy_to_flow. The flow must satisfy the system above within
/// tol (InvalidArgument otherwise). Where z_{i-1} = 0 the observation is
/// unreachable and pi_i is set to 0.
Policy flow_to_policy(const Instance& inst, const FlowSolution& flow, double tol = 1e-9);

}  // namespace odds::bridge
