#pragma once

// Ground truth for a fixed policy: the closed-form expected reward, explicit
// enumeration of game records, exhaustive search over deterministic
// policies, and a seeded Monte Carlo simulator.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "odds/core.hpp"

namespace odds::eval {

/// sum_i R_i (prod_{j<i} (q_j + p_j pi_j)) p_i (1 - pi_i), in O(n).
double expected_reward(const Instance& inst, const Policy& pol);

/// The observed outcomes up to the point of selection. A record of length
/// i <= n ends with the selected success; length n + 1 means nothing was
/// selected and carries an appended 1.
struct Record {
  std::vector<std::uint8_t> bits;

  std::size_t length() const { return bits.size(); }
};

struct WeightedRecord {
  Record record;
  double probability;
};

inline constexpr std::size_t kMaxEnumerationN = 24;
inline constexpr std::size_t kMaxBruteForceN = 20;

using RecordVisitor = std::function<void(std::span<const std::uint8_t> bits, double probability)>;

/// Visits every record with nonzero probability in depth-first order
/// (failure before success, selection before passing). Probabilities are
/// products of q_j (failure), p_j pi_j (passed success) and p_i (1 - pi_i)
/// for the selected success; records of length n + 1 take no extra factor
/// for the appended 1. Throws TooLarge for n > kMaxEnumerationN.
void for_each_record(const Instance& inst, const Policy& pol, const RecordVisitor& visit);

std::vector<WeightedRecord> enumerate_records(const Instance& inst, const Policy& pol);

struct BruteForceResult {
  double value = 0.0;
  StopRegion best;
};

/// Best of all 2^n deterministic policies; on exact ties the
/// lexicographically smallest stop vector (false < true) wins.
/// Throws TooLarge for n > kMaxBruteForceN.
BruteForceResult brute_force_optimal(const Instance& inst);

struct SimResult {
  double estimate = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(trials)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string generator;
};

inline constexpr const char* kGeneratorName = "mt19937_64";

/// Plays the game trials times. Worker k (0-based) runs a contiguous share
/// of the trials on its own mt19937_64 seeded with the (k+1)-th splitmix64
/// output from seed, and the shares are combined in worker order, so the
/// result is bitwise reproducible for a fixed (seed, workers).
/// Throws InvalidArgument when trials or workers is zero.
SimResult simulate(const Instance& inst, const Policy& pol, std::uint64_t trials,
                   std::uint64_t seed, std::size_t workers = 1);

}  // namespace odds::eval
