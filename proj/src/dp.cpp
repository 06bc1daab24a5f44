#include "odds/dp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace odds::dp {

ValueVector solve_dp(const Instance& inst) {
  const std::size_t n = inst.n();
  ValueVector out;
  out.w.assign(n + 1, 0.0);
  auto& w = out.w;
  for (std::size_t i = n; i >= 1; --i) {
    const double stop = inst.q(i - 1) * w[i] + inst.p(i - 1) * inst.reward(i - 1);
    w[i - 1] = std::max(stop, w[i]);
  }
  return out;
}

double recurrence_residual(const Instance& inst, const ValueVector& w) {
  if (w.w.size() != inst.n() + 1) {
    throw Error(ErrorKind::DimensionMismatch, "value vector must have n + 1 entries");
  }
  double worst = std::abs(w.w.back());
  for (std::size_t i = 1; i <= inst.n(); ++i) {
    const double rhs =
        std::max(inst.q(i - 1) * w.w[i] + inst.p(i - 1) * inst.reward(i - 1), w.w[i]);
    worst = std::max(worst, std::abs(w.w[i - 1] - rhs));
  }
  return worst;
}

StopRegion policy_from_values(const Instance& inst, const ValueVector& w) {
  if (w.w.size() != inst.n() + 1) {
    throw Error(ErrorKind::DimensionMismatch, "value vector must have n + 1 entries");
  }
  const double tol = 1e-9 * std::max(1.0, std::abs(w.w.front()));
  const double residual = recurrence_residual(inst, w);
  if (residual > tol) {
    std::ostringstream msg;
    msg << "values do not solve the backward recurrence (residual " << residual << ")";
    throw Error(ErrorKind::InconsistentValues, msg.str());
  }
  StopRegion region;
  region.stop.resize(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i) {
    region.stop[i] = inst.reward(i) >= w.w[i + 1];
  }
  return region;
}

OddsThreshold odds_threshold(const Instance& inst) {
  const std::size_t n = inst.n();
  for (std::size_t i = 1; i < n; ++i) {
    if (!(inst.q(i) > 0.0)) {
      std::ostringstream msg;
      msg << "odds undefined at observation " << i + 1 << " (p = 1)";
      throw Error(ErrorKind::UndefinedOdds, msg.str());
    }
  }

  // Tail sum of odds, accumulated from the end.
  std::size_t s_star = 1;
  double sum = 0.0;
  for (std::size_t s = n; s >= 2; --s) {
    sum += inst.odds(s - 1);
    if (sum >= 1.0) {
      s_star = s;
      break;
    }
  }

  // none_left: P(no success in s..n); one_left: P(exactly one success).
  double none_left = 1.0;
  double one_left = 0.0;
  for (std::size_t j = n; j >= s_star; --j) {
    const double pj = inst.p(j - 1);
    const double qj = inst.q(j - 1);
    one_left = pj * none_left + qj * one_left;
    none_left *= qj;
    if (j == 1) break;
  }
  return {s_star, one_left};
}

StopRegion threshold_stop_region(std::size_t n, std::size_t s_star) {
  if (s_star < 1 || s_star > n) {
    throw Error(ErrorKind::InvalidArgument, "threshold index out of range");
  }
  StopRegion region;
  region.stop.resize(n);
  for (std::size_t i = 1; i <= n; ++i) region.stop[i - 1] = i >= s_star;
  return region;
}

}  // namespace odds::dp
