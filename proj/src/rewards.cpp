#include "odds/rewards.hpp"

#include <cmath>
#include <sstream>

#include "odds/core.hpp"

namespace odds::rewards {

const char* to_string(VariantKind kind) {
  switch (kind) {
    case VariantKind::LastSuccess: return "last-success";
    case VariantKind::MthLast: return "mth-last";
    case VariantKind::AnyOfLastM: return "any-of-last-m";
    case VariantKind::KOfLastL: return "k-of-last-l";
  }
  return "unknown";
}

VariantKind variant_from_string(const std::string& name) {
  if (name == "last-success") return VariantKind::LastSuccess;
  if (name == "mth-last") return VariantKind::MthLast;
  if (name == "any-of-last-m") return VariantKind::AnyOfLastM;
  if (name == "k-of-last-l") return VariantKind::KOfLastL;
  throw Error(ErrorKind::InvalidArgument, "unknown variant kind '" + name + "'");
}

void VariantSpec::validate(std::size_t n) const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); };
  switch (kind) {
    case VariantKind::LastSuccess:
      if (m != 0 || k != 0 || l != 0) fail("last-success takes no parameters");
      break;
    case VariantKind::MthLast:
    case VariantKind::AnyOfLastM:
      if (m < 1) fail(std::string(to_string(kind)) + " requires m >= 1");
      if (k != 0 || l != 0) fail(std::string(to_string(kind)) + " takes only m");
      break;
    case VariantKind::KOfLastL:
      if (m != 0) fail("k-of-last-l takes only k and l");
      if (!(1 <= k && k <= l && l < n)) {
        std::ostringstream msg;
        msg << "k-of-last-l requires 1 <= k <= l < n (k = " << k << ", l = " << l
            << ", n = " << n << ")";
        fail(msg.str());
      }
      break;
  }
}

std::vector<double> elem_sym_polys(std::span<const double> r, int max_h) {
  if (max_h < 0) throw Error(ErrorKind::InvalidArgument, "max_h must be nonnegative");
  std::vector<double> e(static_cast<std::size_t>(max_h) + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double x = r[j];
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "odds values must be finite and nonnegative");
    }
    // Only e_1..e_{j+1} can change when the (j+1)-th value arrives.
    const std::size_t top = std::min<std::size_t>(e.size() - 1, j + 1);
    for (std::size_t h = top; h >= 1; --h) e[h] += x * e[h - 1];
  }
  return e;
}

namespace {

struct HRange {
  std::size_t lo;
  std::size_t hi;
};

HRange summation_range(const VariantSpec& spec) {
  switch (spec.kind) {
    case VariantKind::LastSuccess: return {0, 0};
    case VariantKind::MthLast: return {spec.m - 1, spec.m - 1};
    case VariantKind::AnyOfLastM: return {0, spec.m - 1};
    case VariantKind::KOfLastL: return {spec.k - 1, spec.l - 1};
  }
  return {0, 0};
}

}  // namespace

std::vector<double> build_rewards(std::span<const double> p, const VariantSpec& spec) {
  const std::size_t n = p.size();
  if (n == 0) throw Error(ErrorKind::EmptyInstance, "probability vector is empty");
  spec.validate(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p[i] > 0.0 && p[i] <= 1.0)) {
      throw Error(ErrorKind::ProbabilityOutOfRange, "probability out of range (0, 1]");
    }
  }

  const HRange range = summation_range(spec);
  const bool needs_odds = range.hi >= 1;

  // e holds e_h of the odds strictly after the current index; tail holds the
  // product of the matching q_j.
  std::vector<double> e(range.hi + 1, 0.0);
  e[0] = 1.0;
  double tail = 1.0;
  std::size_t seen = 0;
  std::vector<double> R(n);
  for (std::size_t i = n; i-- > 0;) {
    double sum = 0.0;
    for (std::size_t h = range.lo; h <= range.hi; ++h) sum += e[h];
    R[i] = tail * sum;
    if (i == 0) break;

    const double qi = 1.0 - p[i];
    if (needs_odds) {
      if (!(qi > 0.0)) {
        std::ostringstream msg;
        msg << "variant " << to_string(spec.kind) << " needs the odds at observation " << i + 1
            << ", but p = 1 there";
        throw Error(ErrorKind::UndefinedOdds, msg.str());
      }
      const double ri = p[i] / qi;
      ++seen;
      const std::size_t top = std::min(range.hi, seen);
      for (std::size_t h = top; h >= 1; --h) e[h] += ri * e[h - 1];
    }
    tail *= qi;
  }
  return R;
}

}  // namespace odds::rewards
