#include "odds/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

namespace odds::eval {

double expected_reward(const Instance& inst, const Policy& pol) {
  require_same_length(inst, pol.size(), "policy");
  double reach = 1.0;
  double total = 0.0;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    const double p = inst.p(i);
    total += inst.reward(i) * reach * p * (1.0 - pol[i]);
    reach *= inst.q(i) + p * pol[i];
  }
  return total;
}

namespace {

void require_enumerable(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) {
    std::ostringstream msg;
    msg << what << " supports n <= " << limit << ", got n = " << n;
    throw Error(ErrorKind::TooLarge, msg.str());
  }
}

class RecordWalker {
 public:
  RecordWalker(const Instance& inst, const Policy& pol, const RecordVisitor& visit)
      : inst_(inst), pol_(pol), visit_(visit) {
    bits_.reserve(inst.n() + 1);
  }

  void walk(std::size_t j, double prob) {
    if (j == inst_.n()) {
      bits_.push_back(1);
      visit_(bits_, prob);
      bits_.pop_back();
      return;
    }
    const double p = inst_.p(j);
    const double q = inst_.q(j);
    const double pi = pol_[j];

    if (q > 0.0) {
      bits_.push_back(0);
      walk(j + 1, prob * q);
      bits_.pop_back();
    }
    bits_.push_back(1);
    if (pi < 1.0) visit_(bits_, prob * p * (1.0 - pi));
    if (pi > 0.0) walk(j + 1, prob * p * pi);
    bits_.pop_back();
  }

 private:
  const Instance& inst_;
  const Policy& pol_;
  const RecordVisitor& visit_;
  std::vector<std::uint8_t> bits_;
};

}  // namespace

void for_each_record(const Instance& inst, const Policy& pol, const RecordVisitor& visit) {
  require_same_length(inst, pol.size(), "policy");
  require_enumerable(inst.n(), kMaxEnumerationN, "record enumeration");
  RecordWalker walker(inst, pol, visit);
  walker.walk(0, 1.0);
}

std::vector<WeightedRecord> enumerate_records(const Instance& inst, const Policy& pol) {
  std::vector<WeightedRecord> out;
  for_each_record(inst, pol, [&out](std::span<const std::uint8_t> bits, double prob) {
    out.push_back({Record{{bits.begin(), bits.end()}}, prob});
  });
  return out;
}

BruteForceResult brute_force_optimal(const Instance& inst) {
  const std::size_t n = inst.n();
  require_enumerable(n, kMaxBruteForceN, "brute-force search");

  std::vector<double> pi(n);
  BruteForceResult best;
  std::uint64_t best_mask = 0;
  bool have = false;
  // Observation 1 is the most significant bit, so numeric order of the mask
  // is lexicographic order of the stop vector.
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (std::size_t i = 0; i < n; ++i) {
      pi[i] = ((mask >> (n - 1 - i)) & 1U) != 0 ? 0.0 : 1.0;
    }
    const double value = expected_reward(inst, Policy(pi));
    if (!have || value > best.value) {
      best.value = value;
      best_mask = mask;
      have = true;
    }
  }
  best.best.stop.resize(n);
  for (std::size_t i = 0; i < n; ++i) best.best.stop[i] = ((best_mask >> (n - 1 - i)) & 1U) != 0;
  return best;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// 53 random bits mapped to [0, 1); independent of the standard library's
// distribution implementations.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Partial {
  double sum = 0.0;
  double sum_sq = 0.0;
};

Partial run_trials(const Instance& inst, const Policy& pol, std::uint64_t trials,
                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Partial acc;
  const std::size_t n = inst.n();
  for (std::uint64_t t = 0; t < trials; ++t) {
    double reward = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(unit_uniform(rng) < inst.p(i))) continue;
      const double pi = pol[i];
      bool stop = pi == 0.0;
      if (pi > 0.0 && pi < 1.0) stop = !(unit_uniform(rng) < pi);
      if (stop) {
        reward = inst.reward(i);
        break;
      }
    }
    acc.sum += reward;
    acc.sum_sq += reward * reward;
  }
  return acc;
}

}  // namespace

SimResult simulate(const Instance& inst, const Policy& pol, std::uint64_t trials,
                   std::uint64_t seed, std::size_t workers) {
  require_same_length(inst, pol.size(), "policy");
  if (trials == 0) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  if (workers == 0) throw Error(ErrorKind::InvalidArgument, "workers must be at least 1");

  std::vector<std::uint64_t> seeds(workers);
  std::vector<std::uint64_t> shares(workers, trials / workers);
  std::uint64_t state = seed;
  for (std::size_t k = 0; k < workers; ++k) {
    seeds[k] = splitmix64(state);
    if (k < trials % workers) ++shares[k];
  }

  std::vector<Partial> partial(workers);
  if (workers == 1) {
    partial[0] = run_trials(inst, pol, shares[0], seeds[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t k = 0; k < workers; ++k) {
      pool.emplace_back([&, k] { partial[k] = run_trials(inst, pol, shares[k], seeds[k]); });
    }
    for (auto& th : pool) th.join();
  }

  Partial total;
  for (const Partial& part : partial) {
    total.sum += part.sum;
    total.sum_sq += part.sum_sq;
  }

  SimResult res;
  res.trials = trials;
  res.seed = seed;
  res.workers = workers;
  res.generator = kGeneratorName;
  const auto count = static_cast<double>(trials);
  res.estimate = total.sum / count;
  if (trials > 1) {
    const double var = std::max(0.0, (total.sum_sq - count * res.estimate * res.estimate) / (count - 1.0));
    res.std_error = std::sqrt(var / count);
  }
  return res;
}

}  // namespace odds::eval
