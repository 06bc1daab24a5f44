#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "odds/dp.hpp"
#include "odds/lp_model.hpp"
#include "odds/policy_bridge.hpp"
#include "support/random_instances.hpp"

using namespace odds;
using namespace odds::lp;

namespace {

std::vector<std::string> row_names(const LpProblem& prob) {
  std::vector<std::string> out;
  for (const auto& c : prob.constraints()) out.push_back(c.name);
  return out;
}

std::vector<std::string> column_names(const LpProblem& prob) {
  std::vector<std::string> out;
  for (const auto& v : prob.variables()) out.push_back(v.name);
  return out;
}

}  // namespace

TEST_CASE("flow LP layout for n = 1") {
  const LpProblem prob = build_flow_lp(make_instance({0.5}, {1.0}));
  CHECK(prob.sense() == Sense::Maximize);
  CHECK(column_names(prob) == std::vector<std::string>{"y_1", "z_0", "z_1"});
  CHECK(row_names(prob) == std::vector<std::string>{"Cap_1", "Cons_1", "Source"});
  CHECK(prob.variables()[0].lower == 0.0);
  CHECK(prob.variables()[1].is_free());
  CHECK(prob.variables()[2].is_free());
  CHECK(prob.variables()[0].objective == 1.0);

  const auto& cap = prob.constraints()[0];
  CHECK(cap.relation == Relation::LessEqual);
  REQUIRE(cap.terms.size() == 2);
  CHECK(cap.terms[0].var == 0);
  CHECK(cap.terms[0].coef == 1.0);
  CHECK(cap.terms[1].var == 1);
  CHECK(cap.terms[1].coef == -0.5);
  CHECK(prob.constraints()[2].relation == Relation::Equal);
  CHECK(prob.constraints()[2].rhs == 1.0);

  // y_1 = 0.5, z = (1, 0.5) is the optimum of this one-variable program.
  const std::vector<double> x{0.5, 1.0, 0.5};
  CHECK(prob.max_violation(x) == 0.0);
  CHECK(prob.objective_value(x) == 0.5);
}

TEST_CASE("flow LP has 2n + 1 rows and 2n + 1 columns") {
  for (std::size_t n : {1u, 3u, 10u}) {
    const LpProblem prob = build_flow_lp(secretary_instance(n));
    CHECK(prob.num_constraints() == 2 * n + 1);
    CHECK(prob.num_variables() == 2 * n + 1);
  }
}

TEST_CASE("policy flows satisfy the flow LP exactly") {
  testing::InstanceGen gen(31);
  for (int t = 0; t < 300; ++t) {
    const Instance inst = gen.instance(gen.index(1, 30));
    const LpProblem prob = build_flow_lp(inst);
    const FlowSolution flow = bridge::policy_to_flow(inst, gen.policy(inst.n()));
    const auto x = flow_lp_point(flow);
    CHECK(prob.max_violation(x) <= 1e-12);
    const FlowSolution back = flow_from_lp_point(inst.n(), x);
    CHECK(back.y == flow.y);
    CHECK(back.z == flow.z);
  }
}

TEST_CASE("all-continue flow is feasible with objective zero") {
  const Instance inst = secretary_instance(5);
  const FlowSolution flow{std::vector<double>(5, 0.0), std::vector<double>(6, 1.0)};
  const LpProblem prob = build_flow_lp(inst);
  CHECK(prob.max_violation(flow_lp_point(flow)) == 0.0);
  CHECK(prob.objective_value(flow_lp_point(flow)) == 0.0);
}

TEST_CASE("value LP forms") {
  const Instance inst = make_instance({0.5}, {1.0});
  const LpProblem p = build_dual_lp(inst, DualForm::P);
  CHECK(p.sense() == Sense::Minimize);
  CHECK(column_names(p) == std::vector<std::string>{"w_0", "w_1"});
  CHECK(row_names(p) == std::vector<std::string>{"Stop_1", "Cont_1", "Terminal"});
  CHECK(p.constraints()[0].rhs == 0.5);
  CHECK(p.max_violation(std::vector<double>{0.5, 0.0}) == 0.0);
  CHECK(p.max_violation(std::vector<double>{0.4, 0.0}) == doctest::Approx(0.1));

  const LpProblem p1 = build_dual_lp(inst, DualForm::P1);
  CHECK(column_names(p1) == std::vector<std::string>{"w_0", "w_1", "alpha_1"});
  CHECK(row_names(p1) == std::vector<std::string>{"Stop_1", "Link_1", "Terminal"});

  const LpProblem sec = build_dual_lp(secretary_instance(3), DualForm::P);
  CHECK(sec.num_constraints() == 7);
}

TEST_CASE("DP values are feasible for both value LP forms") {
  testing::InstanceGen gen(32);
  for (int t = 0; t < 200; ++t) {
    const Instance inst = gen.instance(gen.index(1, 30));
    const ValueVector w = dp::solve_dp(inst);
    const LpProblem p = build_dual_lp(inst, DualForm::P);
    CHECK(p.max_violation(dual_p_point(w)) <= 1e-12);
    CHECK(p.objective_value(dual_p_point(w)) == w.w[0]);
    const LpProblem p1 = build_dual_lp(inst, DualForm::P1);
    const auto aux = auxiliary_from_values(w);
    for (double a : aux.alpha) CHECK(a >= 0.0);
    CHECK(p1.max_violation(dual_p1_point(w, aux)) <= 1e-12);
    CHECK(values_from_dual_point(inst.n(), dual_p1_point(w, aux)).w == w.w);
  }
}

TEST_CASE("reduced secretary LP") {
  const LpProblem one = build_secretary_reduced_lp(1);
  CHECK(one.num_variables() == 1);
  CHECK(one.num_constraints() == 1);
  CHECK(one.constraints()[0].rhs == 1.0);
  CHECK(one.variables()[0].objective == 1.0);

  const LpProblem three = build_secretary_reduced_lp(3);
  CHECK(row_names(three) == std::vector<std::string>{"Sec_1", "Sec_2", "Sec_3"});
  // i = 2 reads 2 y_2 <= 1 - y_1.
  const auto& sec2 = three.constraints()[1];
  CHECK(sec2.rhs == 1.0);
  CHECK(sec2.relation == Relation::LessEqual);
  std::vector<double> coef(3, 0.0);
  for (const Term& t : sec2.terms) coef[t.var] = t.coef;
  CHECK(coef == std::vector<double>{1.0, 2.0, 0.0});
  CHECK(three.variables()[2].objective == 1.0);
  CHECK(three.variables()[0].objective == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_AS(build_secretary_reduced_lp(0), Error);
}

TEST_CASE("problem construction validation") {
  LpProblem prob(Sense::Maximize);
  const auto x = prob.add_variable("x", 0.0, kInf, 1.0);
  CHECK_THROWS_AS(prob.add_variable("x", 0.0, 1.0), Error);
  CHECK_THROWS_AS(prob.add_variable("bad", 2.0, 1.0), Error);
  CHECK_THROWS_AS(prob.add_variable("inf", kInf, kInf), Error);
  prob.add_constraint("c", {{x, 1.0}}, Relation::LessEqual, 1.0);
  CHECK_THROWS_AS(prob.add_constraint("c", {{x, 1.0}}, Relation::LessEqual, 1.0), Error);
  CHECK_THROWS_AS(prob.add_constraint("d", {{5, 1.0}}, Relation::LessEqual, 1.0), Error);
  CHECK_THROWS_AS(prob.add_constraint("e", {{x, 1.0}, {x, 2.0}}, Relation::LessEqual, 1.0), Error);
  CHECK_THROWS_AS(prob.add_constraint("f", {{x, NAN}}, Relation::LessEqual, 1.0), Error);
  CHECK(prob.find_variable("x") == 0u);
  CHECK_FALSE(prob.find_variable("y").has_value());
  CHECK(prob.find_constraint("c") == 0u);
}
