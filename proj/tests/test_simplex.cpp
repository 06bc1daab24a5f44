#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>

#include "odds/dp.hpp"
#include "odds/duality.hpp"
#include "odds/lp_model.hpp"
#include "odds/simplex.hpp"
#include "support/random_instances.hpp"

using namespace odds;
using namespace odds::lp;

namespace {

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

ValueVector values_from_flow_duals(const LpProblem& prob, const LpSolution& sol, std::size_t n) {
  std::vector<double> w(n + 1);
  w[0] = sol.duals[*prob.find_constraint("Source")];
  for (std::size_t i = 1; i <= n; ++i) {
    w[i] = sol.duals[*prob.find_constraint("Cons_" + std::to_string(i))];
  }
  return ValueVector{w};
}

}  // namespace

TEST_CASE("box LP") {
  LpProblem prob(Sense::Maximize);
  const auto x1 = prob.add_variable("x1", 0.0, kInf, 1.0);
  const auto x2 = prob.add_variable("x2", 0.0, kInf, 1.0);
  prob.add_constraint("c1", {{x1, 1.0}}, Relation::LessEqual, 1.0);
  prob.add_constraint("c2", {{x2, 1.0}}, Relation::LessEqual, 1.0);
  const LpSolution sol = solve_lp(prob);
  REQUIRE(sol.status == Status::Optimal);
  CHECK(sol.objective == 2.0);
  CHECK(sol.primal == std::vector<double>{1.0, 1.0});
  CHECK(sol.duals == std::vector<double>{1.0, 1.0});
  CHECK(check_optimality(prob, sol).max() <= 1e-9);
}

TEST_CASE("unbounded and infeasible problems are reported by status") {
  LpProblem unb(Sense::Maximize);
  unb.add_variable("x1", 0.0, kInf, 1.0);
  CHECK(solve_lp(unb).status == Status::Unbounded);

  LpProblem inf(Sense::Minimize);
  const auto x = inf.add_variable("x", 0.0, kInf, 1.0);
  inf.add_constraint("lo", {{x, 1.0}}, Relation::GreaterEqual, 2.0);
  inf.add_constraint("hi", {{x, 1.0}}, Relation::LessEqual, 1.0);
  CHECK(solve_lp(inf).status == Status::Infeasible);
}

TEST_CASE("bounds, free variables and equality rows") {
  // min x - y  s.t.  x + y = 3, -2 <= x <= 5, y free, y <= 4 (row).
  LpProblem prob(Sense::Minimize);
  const auto x = prob.add_variable("x", -2.0, 5.0, 1.0);
  const auto y = prob.add_variable("y", -kInf, kInf, -1.0);
  prob.add_constraint("sum", {{x, 1.0}, {y, 1.0}}, Relation::Equal, 3.0);
  prob.add_constraint("cap", {{y, 1.0}}, Relation::LessEqual, 4.0);
  const LpSolution sol = solve_lp(prob);
  REQUIRE(sol.status == Status::Optimal);
  CHECK(sol.primal[0] == doctest::Approx(-1.0));
  CHECK(sol.primal[1] == doctest::Approx(4.0));
  CHECK(sol.objective == doctest::Approx(-5.0));
  CHECK(check_optimality(prob, sol).max() <= 1e-9);

  // Upper-bounded only column: max x with x <= -1.
  LpProblem neg(Sense::Maximize);
  neg.add_variable("x", -kInf, -1.0, 1.0);
  const LpSolution s2 = solve_lp(neg);
  REQUIRE(s2.status == Status::Optimal);
  CHECK(s2.primal[0] == -1.0);
}

TEST_CASE("textbook LP with known duals") {
  // max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18.
  LpProblem prob(Sense::Maximize);
  const auto x = prob.add_variable("x", 0.0, kInf, 3.0);
  const auto y = prob.add_variable("y", 0.0, kInf, 5.0);
  prob.add_constraint("a", {{x, 1.0}}, Relation::LessEqual, 4.0);
  prob.add_constraint("b", {{y, 2.0}}, Relation::LessEqual, 12.0);
  prob.add_constraint("c", {{x, 3.0}, {y, 2.0}}, Relation::LessEqual, 18.0);
  const LpSolution sol = solve_lp(prob);
  REQUIRE(sol.status == Status::Optimal);
  CHECK(sol.objective == doctest::Approx(36.0));
  CHECK(sol.primal[0] == doctest::Approx(2.0));
  CHECK(sol.primal[1] == doctest::Approx(6.0));
  CHECK(sol.duals[0] == doctest::Approx(0.0));
  CHECK(sol.duals[1] == doctest::Approx(1.5));
  CHECK(sol.duals[2] == doctest::Approx(1.0));
}

TEST_CASE("degenerate LP terminates") {
  // Classic cycling example under the largest-coefficient rule.
  LpProblem prob(Sense::Maximize);
  const auto x1 = prob.add_variable("x1", 0.0, kInf, 10.0);
  const auto x2 = prob.add_variable("x2", 0.0, kInf, -57.0);
  const auto x3 = prob.add_variable("x3", 0.0, kInf, -9.0);
  const auto x4 = prob.add_variable("x4", 0.0, kInf, -24.0);
  prob.add_constraint("r1", {{x1, 0.5}, {x2, -5.5}, {x3, -2.5}, {x4, 9.0}}, Relation::LessEqual, 0.0);
  prob.add_constraint("r2", {{x1, 0.5}, {x2, -1.5}, {x3, -0.5}, {x4, 1.0}}, Relation::LessEqual, 0.0);
  prob.add_constraint("r3", {{x1, 1.0}}, Relation::LessEqual, 1.0);
  const LpSolution sol = solve_lp(prob);
  REQUIRE(sol.status == Status::Optimal);
  CHECK(sol.objective == doctest::Approx(1.0));
}

TEST_CASE("flow LP on the secretary n = 3 instance") {
  const Instance inst = secretary_instance(3);
  const LpProblem prob = build_flow_lp(inst);
  const LpSolution sol = solve_lp(prob);
  REQUIRE(sol.status == Status::Optimal);
  CHECK(std::abs(sol.objective - 0.5) <= 1e-12);
  const FlowSolution flow = flow_from_lp_point(3, sol.primal);
  CHECK(flow.y[0] == doctest::Approx(0.0));
  CHECK(flow.y[1] == doctest::Approx(0.5));
  CHECK(flow.y[2] == doctest::Approx(1.0 / 6.0));
  const ValueVector w = values_from_flow_duals(prob, sol, 3);
  CHECK(w.w[0] == doctest::Approx(0.5));
  CHECK(w.w[2] == doctest::Approx(1.0 / 3.0));
  CHECK(w.w[3] == doctest::Approx(0.0));
}

TEST_CASE("one-observation LPs solved by hand") {
  const Instance inst = make_instance({0.5}, {1.0});
  const LpSolution ff = solve_lp(build_flow_lp(inst));
  REQUIRE(ff.status == Status::Optimal);
  CHECK(ff.objective == 0.5);
  CHECK(ff.primal[0] == 0.5);
  const LpSolution p = solve_lp(build_dual_lp(inst, DualForm::P));
  REQUIRE(p.status == Status::Optimal);
  CHECK(p.objective == 0.5);
  const LpSolution sec = solve_lp(build_secretary_reduced_lp(1));
  REQUIRE(sec.status == Status::Optimal);
  CHECK(sec.objective == 1.0);
}

TEST_CASE("strong duality and dual recovery on random instances") {
  testing::InstanceGen gen(41);
  for (int t = 0; t < 60; ++t) {
    const Instance inst = gen.instance(gen.index(1, 50));
    const double w0 = dp::solve_dp(inst).w[0];
    const LpProblem ff = build_flow_lp(inst);
    const LpSolution s_ff = solve_lp(ff);
    REQUIRE(s_ff.status == Status::Optimal);
    CHECK(check_optimality(ff, s_ff).max() <= 1e-9);
    const LpSolution s_p = solve_lp(build_dual_lp(inst, DualForm::P));
    const LpSolution s_p1 = solve_lp(build_dual_lp(inst, DualForm::P1));
    REQUIRE(s_p.status == Status::Optimal);
    REQUIRE(s_p1.status == Status::Optimal);
    CHECK(std::abs(s_ff.objective - s_p.objective) <= 1e-7);
    CHECK(std::abs(s_p.objective - w0) <= 1e-9);
    CHECK(std::abs(s_p1.objective - s_p.objective) <= 1e-9);

    const ValueVector w = values_from_flow_duals(ff, s_ff, inst.n());
    CHECK(duality::check_dual_feasible(inst, w).max() <= 1e-7);
    CHECK(std::abs(w.w[0] - s_ff.objective) <= 1e-7);
  }
}

TEST_CASE("reduced secretary LP matches the flow LP") {
  for (std::size_t n = 1; n <= 20; ++n) {
    const LpSolution red = solve_lp(build_secretary_reduced_lp(n));
    const LpSolution ff = solve_lp(build_flow_lp(secretary_instance(n)));
    REQUIRE(red.status == Status::Optimal);
    REQUIRE(ff.status == Status::Optimal);
    CHECK(std::abs(red.objective - ff.objective) <= 1e-9);
  }
}

TEST_CASE("identical input gives bitwise identical output") {
  testing::InstanceGen gen(42);
  const Instance inst = gen.instance(25);
  const LpProblem prob = build_flow_lp(inst);
  const LpSolution a = solve_lp(prob);
  const LpSolution b = solve_lp(prob);
  CHECK(a.iterations == b.iterations);
  CHECK(bitwise_equal(a.primal, b.primal));
  CHECK(bitwise_equal(a.duals, b.duals));
  CHECK(std::memcmp(&a.objective, &b.objective, sizeof(double)) == 0);
}

TEST_CASE("iteration limit is a numerical failure") {
  SimplexOptions opts;
  opts.max_iterations = 1;
  try {
    solve_lp(build_flow_lp(secretary_instance(10)), opts);
    FAIL("expected NumericalFailure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NumericalFailure);
  }
}
