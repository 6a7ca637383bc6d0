// SPDX-License-Identifier: Apache-2.0

#include "reluplan/nn.hpp"

#include <algorithm>
#include <cmath>

#include "reluplan/errors.hpp"
#include "reluplan/kernels.hpp"

namespace reluplan {

NeuralNet NeuralNet::create(std::vector<Layer> layers,
                            std::vector<int> state_inputs,
                            std::vector<int> action_inputs,
                            std::vector<int> output_states) {
  if (layers.empty()) throw DimensionError("network: no layers");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const Layer& layer = layers[l];
    if (layer.in_width <= 0 || layer.out_width <= 0)
      throw DimensionError("network: layer " + std::to_string(l) +
                           " has empty width");
    if (static_cast<int>(layer.weights.size()) !=
        layer.in_width * layer.out_width)
      throw DimensionError("network: layer " + std::to_string(l) +
                           " weight matrix is " +
                           std::to_string(layer.weights.size()) +
                           " entries, expected " +
                           std::to_string(layer.in_width * layer.out_width));
    if (static_cast<int>(layer.bias.size()) != layer.out_width)
      throw DimensionError("network: layer " + std::to_string(l) +
                           " bias length mismatch");
    if (l > 0 && layers[l - 1].out_width != layer.in_width)
      throw DimensionError(
          "network: layer " + std::to_string(l) + " expects " +
          std::to_string(layer.in_width) + " inputs but layer " +
          std::to_string(l - 1) + " produces " +
          std::to_string(layers[l - 1].out_width));
    const bool last = l + 1 == layers.size();
    if (last && layer.act != Activation::Linear)
      throw Error("network: final layer must be linear");
    if (!last && layer.act != Activation::Relu)
      throw Error("network: hidden layers must be relu");
    for (double w : layer.weights)
      if (!std::isfinite(w))
        throw Error("network: non-finite weight in layer " + std::to_string(l));
    for (double b : layer.bias)
      if (!std::isfinite(b))
        throw Error("network: non-finite bias in layer " + std::to_string(l));
  }

  const int in_w = layers.front().in_width;
  const int out_w = layers.back().out_width;
  if (static_cast<int>(state_inputs.size() + action_inputs.size()) != in_w)
    throw DimensionError("network: input width " + std::to_string(in_w) +
                         " != declared state+action inputs");
  std::vector<char> seen(in_w, 0);
  for (int slot : state_inputs) {
    if (slot < 0 || slot >= in_w || seen[slot]++)
      throw DimensionError("network: bad state input slot");
  }
  for (int slot : action_inputs) {
    if (slot < 0 || slot >= in_w || seen[slot]++)
      throw DimensionError("network: bad action input slot");
  }
  if (static_cast<int>(output_states.size()) != out_w)
    throw DimensionError("network: output width != output_states length");
  if (out_w != static_cast<int>(state_inputs.size()))
    throw DimensionError("network: one output unit per state variable required");
  std::vector<char> covered(out_w, 0);
  for (int s : output_states) {
    if (s < 0 || s >= out_w || covered[s]++)
      throw DimensionError("network: output_states must be a bijection");
  }

  NeuralNet net;
  net.layers_ = std::move(layers);
  net.state_inputs_ = std::move(state_inputs);
  net.action_inputs_ = std::move(action_inputs);
  net.output_states_ = std::move(output_states);
  net.layer_unit_base_.resize(net.layers_.size(), 0);
  for (std::size_t l = 0; l + 1 < net.layers_.size(); ++l) {
    net.layer_unit_base_[l] = net.num_hidden_;
    net.num_hidden_ += net.layers_[l].out_width;
  }
  return net;
}

std::string NeuralNet::structure() const {
  std::string s = std::to_string(input_width());
  for (const Layer& l : layers_) s += ":" + std::to_string(l.out_width);
  return s;
}

NeuralNet::Forward NeuralNet::forward(std::span<const double> input) const {
  if (static_cast<int>(input.size()) != input_width())
    throw DimensionError("forward: input length " +
                         std::to_string(input.size()) + " != " +
                         std::to_string(input_width()));
  for (double v : input)
    if (!std::isfinite(v)) throw Error("forward: non-finite input");

  Forward result;
  result.active.reserve(num_hidden_);
  result.unit_pre.reserve(num_hidden_);
  result.unit_value.reserve(num_hidden_);

  std::vector<double> cur(input.begin(), input.end());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    std::vector<double> next(layer.out_width);
    for (int o = 0; o < layer.out_width; ++o) {
      const double pre =
          layer.bias[o] + kernels::dot(&layer.weights[static_cast<std::size_t>(
                                           o) * layer.in_width],
                                       cur.data(), cur.size());
      if (layer.act == Activation::Relu) {
        const double post = pre > 0.0 ? pre : 0.0;
        next[o] = post;
        result.active.push_back(pre > 0.0 ? 1 : 0);
        result.unit_pre.push_back(pre);
        result.unit_value.push_back(post);
      } else {
        next[o] = pre;
      }
    }
    cur = std::move(next);
  }
  result.output = std::move(cur);
  return result;
}

std::vector<double> NeuralNet::make_input(std::span<const double> state,
                                          std::span<const double> action) const {
  if (static_cast<int>(state.size()) != num_states() ||
      static_cast<int>(action.size()) != num_actions())
    throw DimensionError("make_input: state/action length mismatch");
  std::vector<double> input(input_width(), 0.0);
  for (int s = 0; s < num_states(); ++s) input[state_inputs_[s]] = state[s];
  for (int a = 0; a < num_actions(); ++a) input[action_inputs_[a]] = action[a];
  return input;
}

std::vector<double> NeuralNet::next_state(const std::vector<double>& output) const {
  std::vector<double> next(num_states(), 0.0);
  for (int o = 0; o < output_width(); ++o) next[output_states_[o]] = output[o];
  return next;
}

NetworkBounds NeuralNet::propagate_bounds(
    std::span<const Interval> state_box,
    std::span<const Interval> action_box) const {
  if (static_cast<int>(state_box.size()) != num_states() ||
      static_cast<int>(action_box.size()) != num_actions())
    throw DimensionError("propagate_bounds: box length mismatch");
  std::vector<Interval> cur(input_width());
  for (int s = 0; s < num_states(); ++s) cur[state_inputs_[s]] = state_box[s];
  for (int a = 0; a < num_actions(); ++a)
    cur[action_inputs_[a]] = action_box[a];
  for (const Interval& iv : cur) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
      throw Error("propagate_bounds: unbounded variable domain");
    if (iv.lo > iv.hi) throw Error("propagate_bounds: empty interval");
  }

  NetworkBounds out;
  out.units.reserve(num_hidden_);

  std::vector<double> lo(cur.size()), hi(cur.size());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    lo.resize(cur.size());
    hi.resize(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      lo[i] = cur[i].lo;
      hi[i] = cur[i].hi;
    }
    std::vector<Interval> next(layer.out_width);
    for (int o = 0; o < layer.out_width; ++o) {
      const auto acc = kernels::interval_dot(
          &layer.weights[static_cast<std::size_t>(o) * layer.in_width],
          lo.data(), hi.data(), cur.size());
      const Interval pre{layer.bias[o] + acc.lo, layer.bias[o] + acc.hi};
      if (layer.act == Activation::Relu) {
        UnitBounds ub;
        ub.pre_lo = pre.lo;
        ub.pre_hi = pre.hi;
        ub.out_hi = std::max(0.0, pre.hi);
        ub.big_m = std::max({pre.hi, -pre.lo, 0.0});
        out.max_big_m = std::max(out.max_big_m, ub.big_m);
        out.units.push_back(ub);
        next[o] = Interval{std::max(0.0, pre.lo), ub.out_hi};
      } else {
        next[o] = pre;
        out.outputs.push_back(pre);
      }
    }
    cur = std::move(next);
  }
  return out;
}

UnitInputs NeuralNet::unit_inputs(int layer, int slot) const {
  const Layer& l = layers_[layer];
  UnitInputs in;
  in.bias = l.bias[slot];
  if (layer == 0) {
    for (int s = 0; s < num_states(); ++s) {
      const double w = l.weight(slot, state_inputs_[s]);
      if (w != 0.0) in.states.emplace_back(s, w);
    }
    for (int a = 0; a < num_actions(); ++a) {
      const double w = l.weight(slot, action_inputs_[a]);
      if (w != 0.0) in.actions.emplace_back(a, w);
    }
  } else {
    const int base = layer_unit_base_[layer - 1];
    for (int i = 0; i < l.in_width; ++i) {
      const double w = l.weight(slot, i);
      if (w != 0.0) in.hidden.emplace_back(base + i, w);
    }
  }
  return in;
}

UnitInputs NeuralNet::hidden_unit_inputs(int u) const {
  if (u < 0 || u >= num_hidden_)
    throw DimensionError("hidden_unit_inputs: unit out of range");
  int layer = 0;
  while (layer + 1 < static_cast<int>(layers_.size()) &&
         u >= layer_unit_base_[layer] + layers_[layer].out_width)
    ++layer;
  return unit_inputs(layer, u - layer_unit_base_[layer]);
}

UnitInputs NeuralNet::output_unit_inputs(int o) const {
  if (o < 0 || o >= output_width())
    throw DimensionError("output_unit_inputs: slot out of range");
  return unit_inputs(static_cast<int>(layers_.size()) - 1, o);
}

}  // namespace reluplan
