// SPDX-License-Identifier: Apache-2.0
//
// Feed-forward network with ReLU hidden layers and a linear output layer,
// used as a learned one-step transition model. Provides exact evaluation
// (with activation patterns) and per-unit activation bounds via interval
// forward reachability.

#pragma once

#include <span>
#include <string>
#include <vector>

namespace reluplan {

enum class Activation { Relu, Linear };

struct Layer {
  int in_width = 0;
  int out_width = 0;
  std::vector<double> weights;  // row-major: weights[out * in_width + in]
  std::vector<double> bias;     // per output unit
  Activation act = Activation::Relu;

  double weight(int out, int in) const { return weights[out * in_width + in]; }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Activation bounds of one hidden unit over a given input box.
struct UnitBounds {
  double pre_lo = 0.0;  // lower bound on the unit's weighted input
  double pre_hi = 0.0;  // upper bound on the unit's weighted input
  double out_hi = 0.0;  // max(0, pre_hi): reachable output ceiling
  double big_m = 0.0;   // max(pre_hi, -pre_lo, 0): valid switching constant

  bool dead() const { return out_hi <= 0.0; }
};

struct NetworkBounds {
  std::vector<UnitBounds> units;      // per hidden unit, global order
  std::vector<Interval> outputs;      // weighted-input range per output unit
  double max_big_m = 0.0;             // max over units (0 if no hidden units)
};

/// Where a unit's inputs come from: state/action variables for the first
/// layer, previous-layer hidden units otherwise.
struct UnitInputs {
  double bias = 0.0;
  std::vector<std::pair<int, double>> states;   // (state index, weight)
  std::vector<std::pair<int, double>> actions;  // (action index, weight)
  std::vector<std::pair<int, double>> hidden;   // (global unit index, weight)
};

class NeuralNet {
 public:
  /// Validates and assembles a network. All hidden layers must be Relu and
  /// the final layer Linear; dimensions must chain; weights finite.
  /// `state_inputs[s]` / `action_inputs[a]` give the input slot feeding
  /// state s / action a; `output_states[o]` maps output slot o to the state
  /// it predicts (a bijection).
  static NeuralNet create(std::vector<Layer> layers,
                          std::vector<int> state_inputs,
                          std::vector<int> action_inputs,
                          std::vector<int> output_states);

  int input_width() const { return layers_.front().in_width; }
  int output_width() const { return layers_.back().out_width; }
  int num_states() const { return static_cast<int>(state_inputs_.size()); }
  int num_actions() const { return static_cast<int>(action_inputs_.size()); }
  int num_hidden_units() const { return num_hidden_; }
  int num_hidden_layers() const { return static_cast<int>(layers_.size()) - 1; }

  const std::vector<Layer>& layers() const { return layers_; }
  const std::vector<int>& state_inputs() const { return state_inputs_; }
  const std::vector<int>& action_inputs() const { return action_inputs_; }
  const std::vector<int>& output_states() const { return output_states_; }

  /// Widths joined by ':', e.g. "4:32:32:2".
  std::string structure() const;

  struct Forward {
    std::vector<double> output;      // per output slot
    std::vector<char> active;        // per hidden unit: pre-activation > 0
    std::vector<double> unit_pre;    // per hidden unit: weighted input
    std::vector<double> unit_value;  // per hidden unit: post-activation
  };

  /// Exact evaluation; input is the concatenation the input slots expect.
  Forward forward(std::span<const double> input) const;

  /// Input vector assembled from state and action values via the slot maps.
  std::vector<double> make_input(std::span<const double> state,
                                 std::span<const double> action) const;

  /// Next-state vector reordered from a forward output via output_states.
  std::vector<double> next_state(const std::vector<double>& output) const;

  /// Interval forward reachability over a box of input values given per
  /// state/action variable. All box sides must be finite.
  NetworkBounds propagate_bounds(std::span<const Interval> state_box,
                                 std::span<const Interval> action_box) const;

  /// Incoming connections of hidden unit u (global index).
  UnitInputs hidden_unit_inputs(int u) const;
  /// Incoming connections of output slot o.
  UnitInputs output_unit_inputs(int o) const;

 private:
  std::vector<Layer> layers_;
  std::vector<int> state_inputs_;
  std::vector<int> action_inputs_;
  std::vector<int> output_states_;
  int num_hidden_ = 0;
  std::vector<int> layer_unit_base_;  // global index of each layer's unit 0

  UnitInputs unit_inputs(int layer, int slot) const;
};

}  // namespace reluplan
