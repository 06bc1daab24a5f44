#include "odds/core.hpp"

#include <cmath>
#include <sstream>

namespace odds {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::ProbabilityOutOfRange: return "probability_out_of_range";
    case ErrorKind::InvalidReward: return "invalid_reward";
    case ErrorKind::EmptyInstance: return "empty_instance";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::UndefinedOdds: return "undefined_odds";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::InconsistentValues: return "inconsistent_values";
    case ErrorKind::TooLarge: return "too_large";
    case ErrorKind::NumericalFailure: return "numerical_failure";
    case ErrorKind::Parse: return "parse_error";
  }
  return "unknown";
}

double Instance::odds(std::size_t i) const {
  const double qi = q(i);
  if (!(qi > 0.0)) {
    std::ostringstream msg;
    msg << "odds undefined at observation " << i + 1 << " (p = 1)";
    throw Error(ErrorKind::UndefinedOdds, msg.str());
  }
  return p_[i] / qi;
}

Instance Instance::with_scaled_rewards(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(ErrorKind::InvalidArgument, "reward scale factor must be positive and finite");
  }
  Instance out = *this;
  for (double& r : out.rewards_) r *= factor;
  return out;
}

Instance validate_instance(const RawInstance& raw) {
  const std::size_t n = raw.n.value_or(raw.p.size());
  if (n == 0) throw Error(ErrorKind::EmptyInstance, "instance needs at least one observation");
  if (raw.p.size() != n || raw.rewards.size() != n) {
    std::ostringstream msg;
    msg << "dimension mismatch: n = " << n << ", |p| = " << raw.p.size()
        << ", |R| = " << raw.rewards.size();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }

  Instance inst;
  for (std::size_t i = 0; i < n; ++i) {
    const double pi = raw.p[i];
    if (!(pi > 0.0 && pi <= 1.0)) {
      std::ostringstream msg;
      msg << "probability out of range (0, 1] at observation " << i + 1 << ": " << pi;
      throw Error(ErrorKind::ProbabilityOutOfRange, msg.str());
    }
    const double ri = raw.rewards[i];
    if (!std::isfinite(ri) || ri < 0.0) {
      std::ostringstream msg;
      msg << "reward must be finite and nonnegative at observation " << i + 1 << ": " << ri;
      throw Error(ErrorKind::InvalidReward, msg.str());
    }
    if (pi == 1.0) {
      std::ostringstream msg;
      msg << "p_" << i + 1 << " = 1 outside the open interval (0, 1)";
      inst.warnings_.push_back(msg.str());
    }
  }
  inst.p_ = raw.p;
  inst.rewards_ = raw.rewards;
  return inst;
}

Instance make_instance(std::vector<double> p, std::vector<double> rewards) {
  RawInstance raw;
  raw.p = std::move(p);
  raw.rewards = std::move(rewards);
  return validate_instance(raw);
}

Instance secretary_instance(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::EmptyInstance, "secretary instance needs n >= 1");
  std::vector<double> p(n), r(n);
  for (std::size_t i = 1; i <= n; ++i) {
    p[i - 1] = 1.0 / static_cast<double>(i);
    r[i - 1] = static_cast<double>(i) / static_cast<double>(n);
  }
  return make_instance(std::move(p), std::move(r));
}

bool is_secretary(const Instance& inst, double tol) {
  const auto n = static_cast<double>(inst.n());
  for (std::size_t i = 1; i <= inst.n(); ++i) {
    const auto di = static_cast<double>(i);
    if (std::abs(inst.p(i - 1) - 1.0 / di) > tol) return false;
    if (std::abs(inst.reward(i - 1) - di / n) > tol) return false;
  }
  return true;
}

Policy::Policy(std::vector<double> pi) : pi_(std::move(pi)) {
  for (std::size_t i = 0; i < pi_.size(); ++i) {
    if (!(pi_[i] >= 0.0 && pi_[i] <= 1.0)) {
      std::ostringstream msg;
      msg << "continuation probability out of [0, 1] at observation " << i + 1 << ": " << pi_[i];
      throw Error(ErrorKind::InvalidArgument, msg.str());
    }
  }
}

Policy Policy::all_continue(std::size_t n) { return Policy(std::vector<double>(n, 1.0)); }

Policy Policy::all_stop(std::size_t n) { return Policy(std::vector<double>(n, 0.0)); }

bool ValueVector::satisfies_invariants() const {
  if (w.empty() || w.back() != 0.0) return false;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i - 1] < w[i]) return false;
  }
  return w.back() >= 0.0;
}

Policy StopRegion::to_policy() const {
  std::vector<double> pi(stop.size());
  for (std::size_t i = 0; i < stop.size(); ++i) pi[i] = stop[i] ? 0.0 : 1.0;
  return Policy(std::move(pi));
}

void require_same_length(const Instance& inst, std::size_t len, const char* what) {
  if (len != inst.n()) {
    std::ostringstream msg;
    msg << what << " has length " << len << ", instance has n = " << inst.n();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
}

}  // namespace odds
