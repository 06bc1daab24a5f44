#pragma once

// Seeded generators shared by the property tests and the acceptance suite.

#include <cstdint>
#include <random>
#include <vector>

#include "odds/core.hpp"
#include "odds/rewards.hpp"

namespace odds::testing {

class InstanceGen {
 public:
  explicit InstanceGen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53);
  }

  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  std::vector<double> probabilities(std::size_t n) {
    std::vector<double> p(n);
    for (double& v : p) v = uniform(0.05, 0.95);
    return p;
  }

  /// A variant whose parameters are valid for horizon n.
  rewards::VariantSpec variant(std::size_t n) {
    const std::size_t cap = std::max<std::size_t>(1, std::min<std::size_t>(n, 6));
    switch (index(0, n >= 2 ? 3 : 2)) {
      case 0: return rewards::VariantSpec::last_success();
      case 1: return rewards::VariantSpec::mth_last(index(1, cap));
      case 2: return rewards::VariantSpec::any_of_last(index(1, cap));
      default: {
        const std::size_t l = index(1, std::min(cap, n - 1));
        return rewards::VariantSpec::k_of_last(index(1, l), l);
      }
    }
  }

  /// Mixed family: half variant-generated rewards, half uniform [0, 1].
  Instance instance(std::size_t n) {
    std::vector<double> p = probabilities(n);
    std::vector<double> r;
    if (index(0, 1) == 0) {
      r = rewards::build_rewards(p, variant(n));
    } else {
      r.resize(n);
      for (double& v : r) v = uniform(0.0, 1.0);
    }
    return make_instance(std::move(p), std::move(r));
  }

  Instance last_success_instance(std::size_t n) {
    std::vector<double> p = probabilities(n);
    std::vector<double> r = rewards::build_rewards(p, rewards::VariantSpec::last_success());
    return make_instance(std::move(p), std::move(r));
  }

  /// Interior or boundary continuation probabilities, mixed.
  Policy policy(std::size_t n) {
    std::vector<double> pi(n);
    for (double& v : pi) {
      const std::size_t pick = index(0, 3);
      v = pick == 0 ? 0.0 : pick == 1 ? 1.0 : uniform(0.0, 1.0);
    }
    return Policy(std::move(pi));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace odds::testing
