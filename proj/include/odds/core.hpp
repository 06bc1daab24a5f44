#pragma once

// Domain types shared by every solver in the suite.
//
// Indices: the problem is stated over observations 1..n. Storage is 0-based,
// so observation i lives at position i-1 of p, R, pi, y and stop, while the
// length-(n+1) vectors w and z are indexed 0..n directly.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace odds {

enum class ErrorKind {
  DimensionMismatch,
  ProbabilityOutOfRange,
  InvalidReward,
  EmptyInstance,
  InvalidArgument,
  UndefinedOdds,
  Infeasible,
  InconsistentValues,
  TooLarge,
  NumericalFailure,
  Parse,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can report it as structured data.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Unvalidated input as read from a file or assembled by a caller.
struct RawInstance {
  std::optional<std::size_t> n;
  std::vector<double> p;
  std::vector<double> rewards;
};

/// One problem: independent Bernoulli observations with success
/// probabilities p and a reward R_i paid for selecting a success at i.
///
/// Immutable once built; validate_instance() is the only way to obtain one.
/// p_i = 1 is accepted (the classical secretary problem has p_1 = 1) and
/// recorded in warnings(); odds() refuses such indices.
class Instance {
 public:
  std::size_t n() const noexcept { return p_.size(); }
  const std::vector<double>& p() const noexcept { return p_; }
  const std::vector<double>& rewards() const noexcept { return rewards_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  double p(std::size_t i) const { return p_.at(i); }
  double q(std::size_t i) const { return 1.0 - p_.at(i); }
  double reward(std::size_t i) const { return rewards_.at(i); }

  /// r_i = p_i / q_i; throws UndefinedOdds when q_i = 0.
  double odds(std::size_t i) const;

  /// Same probabilities, rewards multiplied by factor (> 0).
  Instance with_scaled_rewards(double factor) const;

 private:
  friend Instance validate_instance(const RawInstance& raw);
  Instance() = default;

  std::vector<double> p_;
  std::vector<double> rewards_;
  std::vector<std::string> warnings_;
};

/// Checks every invariant and returns the validated instance or throws
/// odds::Error (DimensionMismatch, ProbabilityOutOfRange, InvalidReward,
/// EmptyInstance).
Instance validate_instance(const RawInstance& raw);

/// Convenience: validate from explicit vectors with n = p.size().
Instance make_instance(std::vector<double> p, std::vector<double> rewards);

/// p_i = 1/i, R_i = i/n.
Instance secretary_instance(std::size_t n);

/// True when p_i = 1/i and R_i = i/n, each within tol.
bool is_secretary(const Instance& inst, double tol = 1e-12);

/// Continuation probabilities: pi[i-1] is the chance of passing over a
/// success at observation i.
class Policy {
 public:
  /// Throws InvalidArgument unless every entry lies in [0, 1].
  explicit Policy(std::vector<double> pi);

  static Policy all_continue(std::size_t n);
  static Policy all_stop(std::size_t n);

  std::size_t size() const noexcept { return pi_.size(); }
  double operator[](std::size_t i) const { return pi_[i]; }
  const std::vector<double>& values() const noexcept { return pi_; }

 private:
  std::vector<double> pi_;
};

/// DP values w_0..w_n. Kept as plain data: the certificate checks must be
/// able to inspect vectors that violate the invariants.
struct ValueVector {
  std::vector<double> w;

  /// n + 1 entries, w_n = 0, nonincreasing and nonnegative.
  bool satisfies_invariants() const;
};

/// Edge flows: y[i-1] is the probability of stopping at observation i,
/// z[i] the probability of still being in the game after observation i.
struct FlowSolution {
  std::vector<double> y;
  std::vector<double> z;
};

/// Deterministic stop rule: stop[i-1] selects a success at observation i.
struct StopRegion {
  std::vector<bool> stop;

  /// pi_i = 0 where stopping, 1 elsewhere.
  Policy to_policy() const;
};

void require_same_length(const Instance& inst, std::size_t len, const char* what);

}  // namespace odds
