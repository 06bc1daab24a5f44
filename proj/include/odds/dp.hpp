#pragma once

#include <cstddef>

#include "odds/core.hpp"

namespace odds::dp {

/// Backward induction: w_n = 0, w_{i-1} = max{q_i w_i + p_i R_i, w_i}.
ValueVector solve_dp(const Instance& inst);

/// Largest |w_{i-1} - max{q_i w_i + p_i R_i, w_i}| over i, together with |w_n|.
double recurrence_residual(const Instance& inst, const ValueVector& w);

/// Stop at observation i iff R_i >= w_i. Ties go to STOP; the odds-theorem
/// threshold breaks the same ties toward continuing, so the two rules can
/// disagree on tied indices while achieving the same value.
///
/// w is checked against the recurrence first (tolerance 1e-9 relative to
/// max(1, w_0)) because LP-derived values also come through here; a
/// violation throws InconsistentValues.
StopRegion policy_from_values(const Instance& inst, const ValueVector& w);

struct OddsThreshold {
  std::size_t s_star = 1;  // 1-based threshold index
  double win_probability = 0.0;
};

/// Odds theorem for last-success rewards: s* is the largest s with
/// r_s + ... + r_n >= 1 (exact double comparison, no tolerance), or 1 when
/// the whole sum stays below 1. The win probability is
/// (prod_{j>=s*} q_j)(sum_{j>=s*} r_j), evaluated as the probability of
/// exactly one success in s*..n so that p_1 = 1 needs no special case.
/// Only p is read; p_i = 1 for any i >= 2 throws UndefinedOdds.
OddsThreshold odds_threshold(const Instance& inst);

/// Continue before s*, stop on every success from s* on.
StopRegion threshold_stop_region(std::size_t n, std::size_t s_star);

}  // namespace odds::dp
