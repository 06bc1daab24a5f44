#pragma once

// Reward vectors for the odds problem and its variants. Each variant pays
// R_i = (prod_{j>i} q_j) * sum_{h in H} e_h(r_{i+1}, ..., r_n), where e_h is
// the elementary symmetric polynomial of the tail odds and H depends on the
// variant.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace odds::rewards {

enum class VariantKind { LastSuccess, MthLast, AnyOfLastM, KOfLastL };

const char* to_string(VariantKind kind);
/// Throws odds::Error(InvalidArgument) on an unknown name.
VariantKind variant_from_string(const std::string& name);

struct VariantSpec {
  VariantKind kind = VariantKind::LastSuccess;
  std::size_t m = 0;  // mth-last, any-of-last-m
  std::size_t k = 0;  // k-of-last-l
  std::size_t l = 0;  // k-of-last-l

  static VariantSpec last_success() { return {}; }
  static VariantSpec mth_last(std::size_t m) { return {VariantKind::MthLast, m, 0, 0}; }
  static VariantSpec any_of_last(std::size_t m) { return {VariantKind::AnyOfLastM, m, 0, 0}; }
  static VariantSpec k_of_last(std::size_t k, std::size_t l) {
    return {VariantKind::KOfLastL, 0, k, l};
  }

  /// Checks the parameters that the kind requires (and that no others are
  /// set) against a horizon of n observations.
  void validate(std::size_t n) const;
};

/// e_0..e_{max_h} of the values in r via the one-pass recurrence.
std::vector<double> elem_sym_polys(std::span<const double> r, int max_h);

/// Reward vector R_1..R_n for success probabilities p under the variant.
std::vector<double> build_rewards(std::span<const double> p, const VariantSpec& spec);

}  // namespace odds::rewards
