// SPDX-License-Identifier: Apache-2.0
//
// Factored planning instance over continuous state/action variables with a
// fixed horizon: variable domains, initial values, goal intervals, linear
// global constraints and a concave piecewise-linear reward. Includes plan
// simulation through a transition network and plan validity checking.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reluplan/model.hpp"
#include "reluplan/nn.hpp"

namespace reluplan {

struct VarDecl {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
};

/// Linear inequality over the current state and action values.
struct StepConstraint {
  std::string name;
  std::vector<double> state_coeffs;   // dense, per state variable
  std::vector<double> action_coeffs;  // dense, per action variable
  ConstraintSense sense = ConstraintSense::LessEqual;
  double rhs = 0.0;
};

/// One |...| penalty: weight * |state_coeffs . y' + action_coeffs . x - target|
/// subtracted from the reward (weight >= 0 keeps the reward concave).
struct AbsTerm {
  double weight = 0.0;
  double target = 0.0;
  std::vector<double> next_state_coeffs;
  std::vector<double> action_coeffs;
};

/// Reward of one step, evaluated on the next state and the action:
/// constant + linear part - sum of absolute-value penalties.
struct RewardSpec {
  double constant = 0.0;
  std::vector<double> next_state_coeffs;
  std::vector<double> action_coeffs;
  std::vector<AbsTerm> abs_terms;

  double evaluate(std::span<const double> next_state,
                  std::span<const double> action) const;
};

struct PlanningInstance {
  std::vector<VarDecl> state_vars;
  std::vector<VarDecl> action_vars;
  std::vector<Interval> initial;  // lo == hi means a fixed value
  std::vector<Interval> goal;
  std::vector<StepConstraint> constraints;
  RewardSpec reward;
  int horizon = 1;
  bool synthetic = false;
  std::string name;

  int num_states() const { return static_cast<int>(state_vars.size()); }
  int num_actions() const { return static_cast<int>(action_vars.size()); }

  bool has_fixed_initial() const;
  std::vector<double> fixed_initial() const;
  std::vector<Interval> state_box() const;
  std::vector<Interval> action_box() const;

  /// Checks instance invariants and consistency with the network.
  void validate(const NeuralNet& net) const;
};

struct Plan {
  std::vector<std::vector<double>> actions;               // horizon x |A|
  std::optional<std::vector<std::vector<double>>> states;  // (H+1) x |S|
};

struct Trajectory {
  std::vector<std::vector<double>> states;        // horizon+1 entries
  std::vector<double> step_rewards;               // horizon entries
  std::vector<std::vector<char>> step_patterns;   // activation bits per step
  double total_reward = 0.0;
};

/// Runs the plan through the network from the fixed initial state.
Trajectory simulate(const PlanningInstance& instance, const NeuralNet& net,
                    const Plan& plan);

struct Violation {
  enum class Kind { ActionDomain, StateDomain, GlobalConstraint, Goal, Dynamics };
  Kind kind;
  int step = 0;   // time step (1-based; goal uses horizon+1)
  int index = 0;  // variable or constraint index
  double magnitude = 0.0;
  std::string describe() const;
};

struct PlanCheckReport {
  std::vector<Violation> violations;
  Trajectory trajectory;
  double max_magnitude = 0.0;
  bool valid = false;
};

/// Re-simulates the plan and reports every domain, global-constraint and
/// goal violation with its magnitude; valid iff all magnitudes <= tol.
/// If the plan carries states, they are cross-checked against the
/// simulated trajectory (Dynamics violations).
PlanCheckReport check_plan(const PlanningInstance& instance,
                           const NeuralNet& net, const Plan& plan,
                           double tol = 1e-6);

}  // namespace reluplan
