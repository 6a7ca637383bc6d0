// SPDX-License-Identifier: Apache-2.0

#include "reluplan/instance.hpp"

#include "doctest.h"
#include "reluplan/errors.hpp"

using namespace reluplan;

namespace {

NeuralNet identity_net(int n) {
  std::vector<double> w(n * n, 0.0);
  for (int i = 0; i < n; ++i) w[i * n + i] = 1.0;
  Layer out{n, n, std::move(w), std::vector<double>(n, 0.0),
            Activation::Linear};
  std::vector<int> states(n);
  for (int i = 0; i < n; ++i) states[i] = i;
  return NeuralNet::create({out}, states, {}, states);
}

// y' = relu(s + a), one state and one action.
NeuralNet relu_sum_net() {
  Layer hidden{2, 1, {1.0, 1.0}, {0.0}, Activation::Relu};
  Layer out{1, 1, {1.0}, {0.0}, Activation::Linear};
  return NeuralNet::create({hidden, out}, {0}, {1}, {0});
}

PlanningInstance two_state_instance() {
  PlanningInstance inst;
  inst.state_vars = {{"y1", -10.0, 10.0}, {"y2", -10.0, 10.0}};
  inst.initial = {{1.0, 1.0}, {2.0, 2.0}};
  inst.goal = {{-10.0, 10.0}, {-10.0, 10.0}};
  inst.reward.next_state_coeffs = {0.0, 0.0};
  inst.reward.action_coeffs = {};
  inst.horizon = 2;
  return inst;
}

}  // namespace

TEST_CASE("navigation-style distance reward") {
  RewardSpec spec;
  spec.next_state_coeffs = {0.0, 0.0};
  spec.abs_terms.push_back({1.0, 0.0, {1.0, 0.0}, {}});
  spec.abs_terms.push_back({1.0, 0.0, {0.0, 1.0}, {}});
  const std::vector<double> next{3.0, -4.0};
  CHECK(spec.evaluate(next, {}) == doctest::Approx(-7.0));
}

TEST_CASE("constant reward ignores its inputs") {
  RewardSpec spec;
  spec.constant = 5.0;
  spec.next_state_coeffs = {0.0};
  spec.action_coeffs = {0.0};
  CHECK(spec.evaluate(std::vector<double>{123.0}, std::vector<double>{-9.0}) ==
        doctest::Approx(5.0));
}

TEST_CASE("affine action reward") {
  RewardSpec spec;
  spec.constant = 1.0;
  spec.next_state_coeffs = {};
  spec.action_coeffs = {2.0};
  CHECK(spec.evaluate({}, std::vector<double>{0.1}) == doctest::Approx(1.2));
}

TEST_CASE("reward rejects mismatched lengths") {
  RewardSpec spec;
  spec.next_state_coeffs = {1.0};
  CHECK_THROWS_AS(spec.evaluate(std::vector<double>{1.0, 2.0}, {}),
                  DimensionError);
}

TEST_CASE("identity dynamics keep the initial state") {
  PlanningInstance inst = two_state_instance();
  const NeuralNet net = identity_net(2);
  inst.validate(net);
  Plan plan;
  plan.actions = {{}, {}};
  const Trajectory traj = simulate(inst, net, plan);
  REQUIRE(traj.states.size() == 3);
  for (const auto& s : traj.states) {
    CHECK(s[0] == doctest::Approx(1.0));
    CHECK(s[1] == doctest::Approx(2.0));
  }
}

TEST_CASE("zero horizon gives an empty trajectory") {
  PlanningInstance inst = two_state_instance();
  inst.horizon = 0;
  const NeuralNet net = identity_net(2);
  const Trajectory traj = simulate(inst, net, Plan{});
  CHECK(traj.states.size() == 1);
  CHECK(traj.total_reward == doctest::Approx(0.0));
  CHECK(traj.step_rewards.empty());
}

TEST_CASE("relu chain: states clip at zero") {
  PlanningInstance inst;
  inst.state_vars = {{"s", -5.0, 5.0}};
  inst.action_vars = {{"a", -3.0, 3.0}};
  inst.initial = {{0.0, 0.0}};
  inst.goal = {{-5.0, 5.0}};
  inst.reward.next_state_coeffs = {1.0};
  inst.reward.action_coeffs = {0.0};
  inst.horizon = 2;
  const NeuralNet net = relu_sum_net();
  inst.validate(net);

  Plan plan;
  plan.actions = {{1.0}, {-2.0}};
  const Trajectory traj = simulate(inst, net, plan);
  CHECK(traj.states[0][0] == doctest::Approx(0.0));
  CHECK(traj.states[1][0] == doctest::Approx(1.0));  // relu(0 + 1)
  CHECK(traj.states[2][0] == doctest::Approx(0.0));  // relu(1 - 2)
  CHECK(traj.total_reward == doctest::Approx(1.0));
  CHECK(traj.step_patterns[0][0] == 1);
  CHECK(traj.step_patterns[1][0] == 0);

  // Per-step rewards add up to the total.
  double sum = 0.0;
  for (double r : traj.step_rewards) sum += r;
  CHECK(sum == traj.total_reward);
}

TEST_CASE("missing initial value is an error") {
  PlanningInstance inst = two_state_instance();
  inst.initial[0] = {0.0, 2.0};
  const NeuralNet net = identity_net(2);
  CHECK_THROWS_AS(simulate(inst, net, Plan{{{}, {}}, std::nullopt}), Error);
}

TEST_CASE("valid plan on identity net with goal equal to initial") {
  PlanningInstance inst = two_state_instance();
  inst.goal = {{1.0, 1.0}, {2.0, 2.0}};
  const NeuralNet net = identity_net(2);
  Plan plan;
  plan.actions = {{}, {}};
  const auto report = check_plan(inst, net, plan, 1e-6);
  CHECK(report.valid);
  CHECK(report.violations.empty());
}

TEST_CASE("action outside its domain is reported with magnitude") {
  PlanningInstance inst;
  inst.state_vars = {{"s", -5.0, 5.0}};
  inst.action_vars = {{"a", -0.1, 0.1}};
  inst.initial = {{0.0, 0.0}};
  inst.goal = {{-5.0, 5.0}};
  inst.reward.next_state_coeffs = {0.0};
  inst.reward.action_coeffs = {0.0};
  inst.horizon = 1;
  const NeuralNet net = relu_sum_net();

  Plan plan;
  plan.actions = {{0.2}};
  const auto report = check_plan(inst, net, plan, 1e-6);
  CHECK_FALSE(report.valid);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == Violation::Kind::ActionDomain);
  CHECK(report.violations[0].magnitude == doctest::Approx(0.1));
}

TEST_CASE("goal misses by the interval distance") {
  PlanningInstance inst;
  inst.state_vars = {{"s", 0.0, 10.0}};
  inst.initial = {{4.0, 4.0}};
  inst.goal = {{5.0, 6.0}};
  inst.reward.next_state_coeffs = {0.0};
  inst.horizon = 1;
  const NeuralNet net = identity_net(1);
  Plan plan;
  plan.actions = {{}};
  const auto report = check_plan(inst, net, plan, 1e-6);
  CHECK_FALSE(report.valid);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == Violation::Kind::Goal);
  CHECK(report.violations[0].magnitude == doctest::Approx(1.0));
}

TEST_CASE("simulated trajectories never trip the dynamics check") {
  PlanningInstance inst = two_state_instance();
  const NeuralNet net = identity_net(2);
  Plan plan;
  plan.actions = {{}, {}};
  const Trajectory traj = simulate(inst, net, plan);
  plan.states = traj.states;
  const auto report = check_plan(inst, net, plan, 1e-6);
  for (const auto& v : report.violations)
    CHECK(v.kind != Violation::Kind::Dynamics);
}
