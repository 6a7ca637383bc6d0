// SPDX-License-Identifier: Apache-2.0

#include "reluplan/instance.hpp"

#include <algorithm>
#include <cmath>

#include "reluplan/errors.hpp"

namespace reluplan {

double RewardSpec::evaluate(std::span<const double> next_state,
                            std::span<const double> action) const {
  if (next_state.size() != next_state_coeffs.size() ||
      action.size() != action_coeffs.size())
    throw DimensionError("reward: vector length mismatch");
  double r = constant;
  for (std::size_t s = 0; s < next_state.size(); ++s)
    r += next_state_coeffs[s] * next_state[s];
  for (std::size_t a = 0; a < action.size(); ++a)
    r += action_coeffs[a] * action[a];
  for (const AbsTerm& term : abs_terms) {
    double e = -term.target;
    for (std::size_t s = 0; s < next_state.size(); ++s)
      e += term.next_state_coeffs[s] * next_state[s];
    for (std::size_t a = 0; a < action.size(); ++a)
      e += term.action_coeffs[a] * action[a];
    r -= term.weight * std::abs(e);
  }
  return r;
}

bool PlanningInstance::has_fixed_initial() const {
  return std::all_of(initial.begin(), initial.end(),
                     [](const Interval& iv) { return iv.lo == iv.hi; });
}

std::vector<double> PlanningInstance::fixed_initial() const {
  if (!has_fixed_initial())
    throw Error("instance: initial state is not fully fixed");
  std::vector<double> v(initial.size());
  for (std::size_t s = 0; s < initial.size(); ++s) v[s] = initial[s].lo;
  return v;
}

std::vector<Interval> PlanningInstance::state_box() const {
  std::vector<Interval> box(state_vars.size());
  for (std::size_t s = 0; s < state_vars.size(); ++s)
    box[s] = {state_vars[s].lo, state_vars[s].hi};
  return box;
}

std::vector<Interval> PlanningInstance::action_box() const {
  std::vector<Interval> box(action_vars.size());
  for (std::size_t a = 0; a < action_vars.size(); ++a)
    box[a] = {action_vars[a].lo, action_vars[a].hi};
  return box;
}

void PlanningInstance::validate(const NeuralNet& net) const {
  if (horizon < 0) throw Error("instance: negative horizon");
  const auto check_domain = [](const VarDecl& v) {
    if (!std::isfinite(v.lo) || !std::isfinite(v.hi) || v.lo > v.hi)
      throw Error("instance: variable " + v.name + " needs a finite domain");
  };
  for (const VarDecl& v : state_vars) check_domain(v);
  for (const VarDecl& v : action_vars) check_domain(v);

  if (initial.size() != state_vars.size())
    throw DimensionError("instance: initial length != |S|");
  if (goal.size() != state_vars.size())
    throw DimensionError("instance: goal length != |S|");
  for (std::size_t s = 0; s < state_vars.size(); ++s) {
    const auto& v = state_vars[s];
    if (initial[s].lo > initial[s].hi || initial[s].lo < v.lo - 1e-12 ||
        initial[s].hi > v.hi + 1e-12)
      throw Error("instance: initial value of " + v.name +
                  " outside its domain");
    if (std::max(goal[s].lo, v.lo) > std::min(goal[s].hi, v.hi) + 1e-12)
      throw Error("instance: goal interval of " + v.name +
                  " misses its domain");
  }
  for (const StepConstraint& c : constraints) {
    if (c.state_coeffs.size() != state_vars.size() ||
        c.action_coeffs.size() != action_vars.size())
      throw DimensionError("instance: constraint " + c.name +
                           " references undeclared variables");
  }
  if (reward.next_state_coeffs.size() != state_vars.size() ||
      reward.action_coeffs.size() != action_vars.size())
    throw DimensionError("instance: reward coefficient lengths");
  for (const AbsTerm& t : reward.abs_terms) {
    if (t.weight < 0.0)
      throw Error("instance: absolute-value reward term with negative weight");
    if (t.next_state_coeffs.size() != state_vars.size() ||
        t.action_coeffs.size() != action_vars.size())
      throw DimensionError("instance: reward term coefficient lengths");
  }

  if (net.num_states() != num_states() || net.num_actions() != num_actions())
    throw DimensionError("instance: network expects " +
                         std::to_string(net.num_states()) + " states / " +
                         std::to_string(net.num_actions()) +
                         " actions, instance declares " +
                         std::to_string(num_states()) + " / " +
                         std::to_string(num_actions()));
}

Trajectory simulate(const PlanningInstance& instance, const NeuralNet& net,
                    const Plan& plan) {
  if (static_cast<int>(plan.actions.size()) != instance.horizon)
    throw DimensionError("simulate: plan has " +
                         std::to_string(plan.actions.size()) +
                         " action rows, horizon is " +
                         std::to_string(instance.horizon));
  Trajectory traj;
  traj.states.push_back(instance.fixed_initial());
  for (int t = 0; t < instance.horizon; ++t) {
    const auto& action = plan.actions[t];
    if (static_cast<int>(action.size()) != instance.num_actions())
      throw DimensionError("simulate: action row length mismatch");
    const auto input = net.make_input(traj.states.back(), action);
    auto fwd = net.forward(input);
    auto next = net.next_state(fwd.output);
    const double r = instance.reward.evaluate(next, action);
    traj.step_rewards.push_back(r);
    traj.total_reward += r;
    traj.step_patterns.push_back(std::move(fwd.active));
    traj.states.push_back(std::move(next));
  }
  return traj;
}

std::string Violation::describe() const {
  const char* kind_name = "";
  switch (kind) {
    case Kind::ActionDomain:
      kind_name = "action domain";
      break;
    case Kind::StateDomain:
      kind_name = "state domain";
      break;
    case Kind::GlobalConstraint:
      kind_name = "global constraint";
      break;
    case Kind::Goal:
      kind_name = "goal";
      break;
    case Kind::Dynamics:
      kind_name = "dynamics";
      break;
  }
  return std::string(kind_name) + " #" + std::to_string(index) + " at t=" +
         std::to_string(step) + " by " + std::to_string(magnitude);
}

PlanCheckReport check_plan(const PlanningInstance& instance,
                           const NeuralNet& net, const Plan& plan,
                           double tol) {
  PlanCheckReport report;
  report.trajectory = simulate(instance, net, plan);
  const auto& states = report.trajectory.states;

  const auto add = [&](Violation::Kind kind, int step, int index, double mag) {
    if (mag <= 0.0) return;
    report.violations.push_back(Violation{kind, step, index, mag});
    report.max_magnitude = std::max(report.max_magnitude, mag);
  };
  const auto interval_distance = [](double v, double lo, double hi) {
    if (v < lo) return lo - v;
    if (v > hi) return v - hi;
    return 0.0;
  };

  for (int t = 0; t < instance.horizon; ++t) {
    for (int a = 0; a < instance.num_actions(); ++a)
      add(Violation::Kind::ActionDomain, t + 1, a,
          interval_distance(plan.actions[t][a], instance.action_vars[a].lo,
                            instance.action_vars[a].hi));
    for (int s = 0; s < instance.num_states(); ++s)
      add(Violation::Kind::StateDomain, t + 1, s,
          interval_distance(states[t][s], instance.state_vars[s].lo,
                            instance.state_vars[s].hi));
    for (std::size_t c = 0; c < instance.constraints.size(); ++c) {
      const StepConstraint& con = instance.constraints[c];
      double lhs = 0.0;
      for (int s = 0; s < instance.num_states(); ++s)
        lhs += con.state_coeffs[s] * states[t][s];
      for (int a = 0; a < instance.num_actions(); ++a)
        lhs += con.action_coeffs[a] * plan.actions[t][a];
      double mag = 0.0;
      switch (con.sense) {
        case ConstraintSense::LessEqual:
          mag = lhs - con.rhs;
          break;
        case ConstraintSense::GreaterEqual:
          mag = con.rhs - lhs;
          break;
        case ConstraintSense::Equal:
          mag = std::abs(lhs - con.rhs);
          break;
      }
      add(Violation::Kind::GlobalConstraint, t + 1, static_cast<int>(c), mag);
    }
  }
  // Final state: domain and goal.
  for (int s = 0; s < instance.num_states(); ++s) {
    add(Violation::Kind::StateDomain, instance.horizon + 1, s,
        interval_distance(states[instance.horizon][s],
                          instance.state_vars[s].lo,
                          instance.state_vars[s].hi));
    add(Violation::Kind::Goal, instance.horizon + 1, s,
        interval_distance(states[instance.horizon][s], instance.goal[s].lo,
                          instance.goal[s].hi));
  }
  // States supplied with the plan must match the simulated dynamics.
  if (plan.states) {
    const auto& given = *plan.states;
    if (given.size() == states.size()) {
      for (std::size_t t = 0; t < states.size(); ++t)
        for (int s = 0; s < instance.num_states(); ++s)
          add(Violation::Kind::Dynamics, static_cast<int>(t) + 1, s,
              std::abs(given[t][s] - states[t][s]));
    } else {
      add(Violation::Kind::Dynamics, 1, 0, kInf);
    }
  }

  report.valid = report.max_magnitude <= tol;
  return report;
}

}  // namespace reluplan
