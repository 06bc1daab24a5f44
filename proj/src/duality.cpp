#include "odds/duality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace odds::duality {

double PrimalViolation::max() const {
  return std::max({conservation, capacity, source, nonnegativity});
}

double DualViolation::max() const { return std::max({stop, cont, terminal}); }

const char* to_string(SlackPair pair) {
  return pair == SlackPair::Stop ? "stop" : "continue";
}

namespace {

void require_flow_shape(const Instance& inst, const FlowSolution& flow) {
  require_same_length(inst, flow.y.size(), "flow y");
  if (flow.z.size() != inst.n() + 1) {
    throw Error(ErrorKind::DimensionMismatch, "flow z must have n + 1 entries");
  }
}

void require_value_shape(const Instance& inst, const ValueVector& w) {
  if (w.w.size() != inst.n() + 1) {
    throw Error(ErrorKind::DimensionMismatch, "value vector must have n + 1 entries");
  }
}

}  // namespace

PrimalViolation check_primal_feasible(const Instance& inst, const FlowSolution& flow) {
  require_flow_shape(inst, flow);
  PrimalViolation v;
  v.source = std::abs(flow.z[0] - 1.0);
  for (std::size_t i = 1; i <= inst.n(); ++i) {
    const double y = flow.y[i - 1];
    v.conservation = std::max(v.conservation, std::abs(y + flow.z[i] - flow.z[i - 1]));
    v.capacity = std::max(v.capacity, y - inst.p(i - 1) * flow.z[i - 1]);
    v.nonnegativity = std::max(v.nonnegativity, -y);
  }
  return v;
}

DualViolation check_dual_feasible(const Instance& inst, const ValueVector& w) {
  require_value_shape(inst, w);
  DualViolation v;
  v.terminal = std::abs(w.w.back());
  for (std::size_t i = 1; i <= inst.n(); ++i) {
    const double stop = inst.q(i - 1) * w.w[i] + inst.p(i - 1) * inst.reward(i - 1);
    v.stop = std::max(v.stop, stop - w.w[i - 1]);
    v.cont = std::max(v.cont, w.w[i] - w.w[i - 1]);
  }
  return v;
}

double check_p1_feasible(const Instance& inst, const ValueVector& w,
                         const std::vector<double>& alpha) {
  require_value_shape(inst, w);
  require_same_length(inst, alpha.size(), "alpha");
  double worst = std::abs(w.w.back());
  for (std::size_t i = 1; i <= inst.n(); ++i) {
    const double a = alpha[i - 1];
    worst = std::max(worst, inst.reward(i - 1) - (w.w[i] + a / inst.p(i - 1)));
    worst = std::max(worst, std::abs(w.w[i - 1] - w.w[i] - a));
    worst = std::max(worst, -a);
  }
  return worst;
}

namespace {

void require_feasible_pair(const Instance& inst, const FlowSolution& flow, const ValueVector& w,
                           double tol) {
  const double primal = check_primal_feasible(inst, flow).max();
  const double dual = check_dual_feasible(inst, w).max();
  if (primal > tol || dual > tol) {
    std::ostringstream msg;
    msg << "certificate inputs are infeasible (flow residual " << primal << ", value residual "
        << dual << ")";
    throw Error(ErrorKind::Infeasible, msg.str());
  }
}

}  // namespace

double duality_gap(const Instance& inst, const FlowSolution& flow, const ValueVector& w,
                   double tol) {
  require_feasible_pair(inst, flow, w, tol);
  double primal = 0.0;
  for (std::size_t i = 0; i < inst.n(); ++i) primal += inst.reward(i) * flow.y[i];
  return w.w.front() - primal;
}

SlacknessReport complementary_slackness(const Instance& inst, const FlowSolution& flow,
                                        const ValueVector& w, double tolerance,
                                        double feasibility_tol) {
  require_feasible_pair(inst, flow, w, feasibility_tol);
  SlacknessReport rep;
  rep.tolerance = tolerance;
  rep.scale = std::max(1.0, w.w.front());
  for (std::size_t i = 1; i <= inst.n(); ++i) {
    const double p = inst.p(i - 1);
    const double y = flow.y[i - 1];
    const double stop_slack = w.w[i - 1] - inst.q(i - 1) * w.w[i] - p * inst.reward(i - 1);
    const double cap_slack = p * flow.z[i - 1] - y;
    const double alpha = w.w[i - 1] - w.w[i];

    const double stop = std::abs(y * stop_slack) / rep.scale;
    const double cont = std::abs(cap_slack * alpha) / rep.scale;
    rep.max_stop = std::max(rep.max_stop, stop);
    rep.max_continue = std::max(rep.max_continue, cont);
    if (stop > tolerance) rep.violations.push_back({i, SlackPair::Stop, stop});
    if (cont > tolerance) rep.violations.push_back({i, SlackPair::Continue, cont});
  }
  return rep;
}

}  // namespace odds::duality
