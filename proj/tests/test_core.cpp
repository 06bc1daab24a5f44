#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "odds/core.hpp"
#include "support/random_instances.hpp"

using namespace odds;

namespace {

ErrorKind kind_of(const RawInstance& raw) {
  try {
    validate_instance(raw);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected validation to fail");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("minimal instance validates") {
  const Instance inst = validate_instance({1, {0.5}, {1.0}});
  CHECK(inst.n() == 1);
  CHECK(inst.p(0) == 0.5);
  CHECK(inst.q(0) == 0.5);
  CHECK(inst.odds(0) == 1.0);
  CHECK(inst.warnings().empty());
}

TEST_CASE("p = 1 is accepted with a warning") {
  const Instance inst = validate_instance({3, {1.0, 0.5, 1.0 / 3.0}, {1.0 / 3.0, 2.0 / 3.0, 1.0}});
  CHECK(inst.n() == 3);
  REQUIRE(inst.warnings().size() == 1);
  CHECK(inst.warnings()[0].find("p_1") != std::string::npos);
  CHECK_THROWS_AS(inst.odds(0), Error);
  try {
    inst.odds(0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndefinedOdds);
  }
  CHECK(inst.odds(1) == 1.0);
}

TEST_CASE("validation rejects bad input with a specific kind") {
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK(kind_of({2, {0.5, 1.2}, {1, 1}}) == ErrorKind::ProbabilityOutOfRange);
  CHECK(kind_of({2, {0.5, 0.0}, {1, 1}}) == ErrorKind::ProbabilityOutOfRange);
  CHECK(kind_of({1, {nan}, {1}}) == ErrorKind::ProbabilityOutOfRange);
  CHECK(kind_of({2, {0.5, 0.5}, {1, -0.1}}) == ErrorKind::InvalidReward);
  CHECK(kind_of({2, {0.5, 0.5}, {1, inf}}) == ErrorKind::InvalidReward);
  CHECK(kind_of({2, {0.5, 0.5}, {1, nan}}) == ErrorKind::InvalidReward);
  CHECK(kind_of({3, {0.5, 0.5}, {1, 1}}) == ErrorKind::DimensionMismatch);
  CHECK(kind_of({2, {0.5, 0.5}, {1}}) == ErrorKind::DimensionMismatch);
  CHECK(kind_of({0, {}, {}}) == ErrorKind::EmptyInstance);
  CHECK(kind_of({std::nullopt, {}, {}}) == ErrorKind::EmptyInstance);
}

TEST_CASE("q + p reconstructs 1 for random probabilities") {
  testing::InstanceGen gen(7);
  for (int t = 0; t < 200; ++t) {
    const Instance inst = gen.instance(gen.index(1, 20));
    for (std::size_t i = 0; i < inst.n(); ++i) {
      CHECK(inst.q(i) + inst.p(i) == doctest::Approx(1.0).epsilon(1e-16));
      CHECK(inst.odds(i) == inst.p(i) / inst.q(i));
    }
  }
}

TEST_CASE("secretary instance") {
  const Instance inst = secretary_instance(4);
  CHECK(inst.p() == std::vector<double>{1.0, 0.5, 1.0 / 3.0, 0.25});
  CHECK(inst.rewards() == std::vector<double>{0.25, 0.5, 0.75, 1.0});
  CHECK(is_secretary(inst));
  CHECK_FALSE(is_secretary(make_instance({0.5, 0.5}, {0.5, 1.0})));
  CHECK_FALSE(is_secretary(inst.with_scaled_rewards(2.0)));
  CHECK_THROWS_AS(secretary_instance(0), Error);
}

TEST_CASE("reward scaling keeps probabilities") {
  const Instance inst = make_instance({0.2, 0.4}, {1.0, 3.0});
  const Instance scaled = inst.with_scaled_rewards(2.5);
  CHECK(scaled.p() == inst.p());
  CHECK(scaled.rewards() == std::vector<double>{2.5, 7.5});
  CHECK_THROWS_AS(inst.with_scaled_rewards(0.0), Error);
  CHECK_THROWS_AS(inst.with_scaled_rewards(-1.0), Error);
}

TEST_CASE("policy entries must lie in [0, 1]") {
  CHECK_NOTHROW(Policy({0.0, 0.5, 1.0}));
  CHECK_THROWS_AS(Policy({0.5, 1.5}), Error);
  CHECK_THROWS_AS(Policy({-0.1}), Error);
  CHECK_THROWS_AS(Policy({std::numeric_limits<double>::quiet_NaN()}), Error);
  CHECK(Policy::all_continue(3).values() == std::vector<double>{1, 1, 1});
  CHECK(Policy::all_stop(2).values() == std::vector<double>{0, 0});
}

TEST_CASE("value vector invariants") {
  CHECK(ValueVector{{0.5, 0.5, 1.0 / 3.0, 0.0}}.satisfies_invariants());
  CHECK_FALSE(ValueVector{{0.5, 0.6, 0.0}}.satisfies_invariants());
  CHECK_FALSE(ValueVector{{0.5, 0.1}}.satisfies_invariants());
  CHECK_FALSE(ValueVector{{}}.satisfies_invariants());
}

TEST_CASE("stop region maps to a deterministic policy") {
  const StopRegion region{{false, true, true}};
  CHECK(region.to_policy().values() == std::vector<double>{1.0, 0.0, 0.0});
}

TEST_CASE("error kinds have stable names") {
  CHECK(std::string(to_string(ErrorKind::ProbabilityOutOfRange)) == "probability_out_of_range");
  CHECK(std::string(to_string(ErrorKind::Parse)) == "parse_error");
  CHECK(std::string(to_string(ErrorKind::NumericalFailure)) == "numerical_failure");
}
