#include "odds/policy_bridge.hpp"

#include <algorithm>
#include <sstream>

#include "odds/duality.hpp"

namespace odds::bridge {

FlowSolution policy_to_flow(const Instance& inst, const Policy& pol) {
  require_same_length(inst, pol.size(), "policy");
  const std::size_t n = inst.n();
  FlowSolution flow;
  flow.y.resize(n);
  flow.z.resize(n + 1);
  flow.z[0] = 1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double p = inst.p(i - 1);
    const double pi = pol[i - 1];
    flow.y[i - 1] = flow.z[i - 1] * p * (1.0 - pi);
    flow.z[i] = flow.z[i - 1] * (inst.q(i - 1) + p * pi);
  }
  return flow;
}

Policy flow_to_policy(const Instance& inst, const FlowSolution& flow, double tol) {
  require_same_length(inst, flow.y.size(), "flow y");
  if (flow.z.size() != inst.n() + 1) {
    throw Error(ErrorKind::DimensionMismatch, "flow z must have n + 1 entries");
  }
  const auto violation = duality::check_primal_feasible(inst, flow);
  if (violation.max() > tol) {
    std::ostringstream msg;
    msg << "flow violates the flow constraints by " << violation.max();
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  std::vector<double> pi(inst.n());
  for (std::size_t i = 1; i <= inst.n(); ++i) {
    const double reach = flow.z[i - 1];
    if (reach <= 0.0) {
      pi[i - 1] = 0.0;
      continue;
    }
    pi[i - 1] = std::clamp(1.0 - flow.y[i - 1] / (inst.p(i - 1) * reach), 0.0, 1.0);
  }
  return Policy(std::move(pi));
}

}  // namespace odds::bridge
