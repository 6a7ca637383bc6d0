// SPDX-License-Identifier: Apache-2.0

#include "reluplan/domains.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "reluplan/errors.hpp"

namespace reluplan {

namespace {

// Implementation-defined distributions would break cross-run determinism;
// derive uniforms from the standardized mt19937 stream directly.
double uniform(std::mt19937& gen, double a, double b) {
  return a + (b - a) * (gen() * (1.0 / 4294967296.0));
}

Layer zero_layer(int in, int out, Activation act) {
  Layer l;
  l.in_width = in;
  l.out_width = out;
  l.act = act;
  l.weights.assign(static_cast<std::size_t>(in) * out, 0.0);
  l.bias.assign(out, 0.0);
  return l;
}

void set_w(Layer& l, int out, int in, double w) {
  l.weights[static_cast<std::size_t>(out) * l.in_width + in] = w;
}

// Units beyond the hand-built ones stay off everywhere (bias -1, no
// inputs); they exercise the dead-unit paths downstream.
void deaden(Layer& l, int from) {
  for (int u = from; u < l.out_width; ++u) l.bias[u] = -1.0;
}

std::pair<PlanningInstance, NeuralNet> navigation(const DomainSpec& spec) {
  const double k = spec.size;
  const double c = k / 2.0;
  const int w = spec.width;
  if (w < 8) throw Error("navigation: hidden width must be at least 8");

  // Inputs: x, y, ax, ay.
  Layer l1 = zero_layer(4, w, Activation::Relu);
  set_w(l1, 0, 0, 1.0);  // u0 = relu(x + ax)
  set_w(l1, 0, 2, 1.0);
  set_w(l1, 1, 1, 1.0);  // u1 = relu(y + ay)
  set_w(l1, 1, 3, 1.0);
  set_w(l1, 2, 0, 1.0);  // u2 = relu(x - c)
  l1.bias[2] = -c;
  set_w(l1, 3, 0, -1.0);  // u3 = relu(c - x)
  l1.bias[3] = c;
  set_w(l1, 4, 1, 1.0);  // u4 = relu(y - c)
  l1.bias[4] = -c;
  set_w(l1, 5, 1, -1.0);  // u5 = relu(c - y)
  l1.bias[5] = c;
  set_w(l1, 6, 0, -1.0);  // u6 = relu(k - x - ax)
  set_w(l1, 6, 2, -1.0);
  l1.bias[6] = k;
  set_w(l1, 7, 1, -1.0);  // u7 = relu(k - y - ay)
  set_w(l1, 7, 3, -1.0);
  l1.bias[7] = k;
  deaden(l1, 8);

  // v0/v1 clamp positions into [0, k]; v2/v3 are deceleration bumps around
  // the maze center (active within taxi distance 1 and 0.5).
  Layer l2 = zero_layer(w, w, Activation::Relu);
  set_w(l2, 0, 0, -1.0);  // v0 = relu(k - u0)
  l2.bias[0] = k;
  set_w(l2, 1, 1, -1.0);  // v1 = relu(k - u1)
  l2.bias[1] = k;
  for (int j = 2; j <= 5; ++j) set_w(l2, 2, j, -1.0);
  l2.bias[2] = 1.0;  // v2 = relu(1 - |x-c| - |y-c|)
  for (int j = 2; j <= 5; ++j) set_w(l2, 3, j, -1.0);
  l2.bias[3] = 0.5;  // v3 = relu(0.5 - |x-c| - |y-c|)
  set_w(l2, 4, 6, 1.0);  // pass-through of the wall distances
  set_w(l2, 5, 7, 1.0);
  deaden(l2, 6);

  const double gamma = 0.05;
  Layer out = zero_layer(w, 2, Activation::Linear);
  set_w(out, 0, 0, -1.0);  // next_x = k - v0 - gamma (v2 + v3)
  set_w(out, 0, 2, -gamma);
  set_w(out, 0, 3, -gamma);
  out.bias[0] = k;
  set_w(out, 1, 1, -1.0);
  set_w(out, 1, 2, -gamma);
  set_w(out, 1, 3, -gamma);
  out.bias[1] = k;

  NeuralNet net = NeuralNet::create({l1, l2, out}, {0, 1}, {2, 3}, {0, 1});

  PlanningInstance inst;
  inst.name = "navigation-" + std::to_string(spec.size);
  inst.synthetic = true;
  inst.state_vars = {{"x", 0.0, k}, {"y", 0.0, k}};
  inst.action_vars = {{"ax", -0.1, 0.1}, {"ay", -0.1, 0.1}};
  inst.initial = {{0.5, 0.5}, {0.5, 0.5}};
  inst.goal = {{0.0, k}, {0.0, k}};
  inst.horizon = spec.horizon;
  inst.reward.next_state_coeffs = {0.0, 0.0};
  inst.reward.action_coeffs = {0.0, 0.0};
  inst.reward.abs_terms.push_back(
      {1.0, k - 1.0, {1.0, 0.0}, {0.0, 0.0}});  // -|x' - (k-1)|
  inst.reward.abs_terms.push_back(
      {1.0, k - 1.0, {0.0, 1.0}, {0.0, 0.0}});  // -|y' - (k-1)|
  return {std::move(inst), std::move(net)};
}

std::pair<PlanningInstance, NeuralNet> reservoir(const DomainSpec& spec) {
  const int k = spec.size;
  const int w = std::max(spec.width, k);

  // level'_i = relu(0.98 level_i - a_i + 0.5 a_{i-1} + rain_i)
  Layer l1 = zero_layer(2 * k, w, Activation::Relu);
  for (int i = 0; i < k; ++i) {
    set_w(l1, i, i, 0.98);
    set_w(l1, i, k + i, -1.0);
    if (i > 0) set_w(l1, i, k + i - 1, 0.5);
    l1.bias[i] = 0.9 + 0.05 * i;
  }
  deaden(l1, k);

  Layer out = zero_layer(w, k, Activation::Linear);
  for (int i = 0; i < k; ++i) set_w(out, i, i, 1.0);

  std::vector<int> states(k), actions(k), outs(k);
  for (int i = 0; i < k; ++i) {
    states[i] = i;
    actions[i] = k + i;
    outs[i] = i;
  }
  NeuralNet net = NeuralNet::create({l1, out}, states, actions, outs);

  PlanningInstance inst;
  inst.name = "reservoir-" + std::to_string(k);
  inst.synthetic = true;
  for (int i = 0; i < k; ++i) {
    inst.state_vars.push_back({"level" + std::to_string(i), 0.0, 100.0});
    inst.action_vars.push_back({"release" + std::to_string(i), 0.0, 5.0});
    inst.initial.push_back({40.0, 40.0});
    inst.goal.push_back({0.0, 100.0});
  }
  inst.horizon = spec.horizon;
  inst.reward.next_state_coeffs.assign(k, 0.0);
  inst.reward.action_coeffs.assign(k, -0.02);
  for (int i = 0; i < k; ++i) {
    AbsTerm term;
    term.weight = 0.1;
    term.target = 50.0;
    term.next_state_coeffs.assign(k, 0.0);
    term.next_state_coeffs[i] = 1.0;
    term.action_coeffs.assign(k, 0.0);
    inst.reward.abs_terms.push_back(std::move(term));
  }
  return {std::move(inst), std::move(net)};
}

std::pair<PlanningInstance, NeuralNet> hvac(const DomainSpec& spec) {
  const int k = spec.size;
  const int w = std::max(spec.width, k);
  const double outside = 5.0;
  const double kappa = 0.05;  // leak to outside
  const double eta = 2.0;     // heater gain

  // T'_i = 10 + relu(pre_i - 10) with pre_i mixing the room, its
  // neighbours, the outside temperature and the heater.
  Layer l1 = zero_layer(2 * k, w, Activation::Relu);
  for (int i = 0; i < k; ++i) {
    double self = 1.0 - kappa;
    if (i > 0) {
      set_w(l1, i, i - 1, 0.05);
      self -= 0.05;
    }
    if (i + 1 < k) {
      set_w(l1, i, i + 1, 0.05);
      self -= 0.05;
    }
    set_w(l1, i, i, self);
    set_w(l1, i, k + i, eta);
    l1.bias[i] = kappa * outside - 10.0;
  }
  deaden(l1, k);

  Layer out = zero_layer(w, k, Activation::Linear);
  for (int i = 0; i < k; ++i) {
    set_w(out, i, i, 1.0);
    out.bias[i] = 10.0;
  }

  std::vector<int> states(k), actions(k), outs(k);
  for (int i = 0; i < k; ++i) {
    states[i] = i;
    actions[i] = k + i;
    outs[i] = i;
  }
  NeuralNet net = NeuralNet::create({l1, out}, states, actions, outs);

  PlanningInstance inst;
  inst.name = "hvac-" + std::to_string(k);
  inst.synthetic = true;
  for (int i = 0; i < k; ++i) {
    inst.state_vars.push_back({"temp" + std::to_string(i), 10.0, 30.0});
    inst.action_vars.push_back({"heat" + std::to_string(i), 0.0, 1.0});
    inst.initial.push_back({18.0, 18.0});
    inst.goal.push_back({10.0, 30.0});
  }
  inst.horizon = spec.horizon;
  inst.reward.next_state_coeffs.assign(k, 0.0);
  inst.reward.action_coeffs.assign(k, -1.0);
  for (int i = 0; i < k; ++i) {
    AbsTerm term;
    term.weight = 0.5;
    term.target = 22.0;
    term.next_state_coeffs.assign(k, 0.0);
    term.next_state_coeffs[i] = 1.0;
    term.action_coeffs.assign(k, 0.0);
    inst.reward.abs_terms.push_back(std::move(term));
  }
  return {std::move(inst), std::move(net)};
}

std::pair<PlanningInstance, NeuralNet> random_instance(const DomainSpec& spec) {
  std::vector<int> widths = spec.widths;
  if (widths.empty()) widths = {4, 6, 2};
  if (widths.size() < 2) throw Error("random: need at least two widths");
  const int ns = widths.back();
  const int na = widths.front() - ns;
  if (ns < 1 || na < 1)
    throw Error("random: input width must exceed output width");

  // Weights uniform in [-1,1] scaled by the fan-in; the output layer gets
  // an extra 0.5 so one step cannot stray far outside the unit box.
  std::mt19937 gen(spec.seed);
  std::vector<Layer> layers;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const bool last = l + 2 == widths.size();
    Layer layer = zero_layer(widths[l], widths[l + 1],
                             last ? Activation::Linear : Activation::Relu);
    const double scale = (last ? 0.5 : 1.0) / layer.in_width;
    for (auto& v : layer.weights) v = uniform(gen, -1.0, 1.0) * scale;
    for (auto& v : layer.bias) v = uniform(gen, -0.3, 0.3);
    layers.push_back(std::move(layer));
  }

  std::vector<int> states(ns), actions(na), outs(ns);
  for (int i = 0; i < ns; ++i) states[i] = i;
  for (int i = 0; i < na; ++i) actions[i] = ns + i;
  for (int i = 0; i < ns; ++i) outs[i] = i;
  NeuralNet net = NeuralNet::create(layers, states, actions, outs);

  PlanningInstance inst;
  inst.name = "random-" + std::to_string(spec.seed);
  inst.synthetic = true;
  for (int i = 0; i < ns; ++i) {
    inst.state_vars.push_back({"s" + std::to_string(i), -1.0, 1.0});
    inst.initial.push_back({0.0, 0.0});
    inst.goal.push_back({-1.0, 1.0});
  }
  for (int i = 0; i < na; ++i)
    inst.action_vars.push_back({"a" + std::to_string(i), -1.0, 1.0});
  inst.horizon = spec.horizon;
  inst.reward.next_state_coeffs.assign(ns, 0.0);
  inst.reward.action_coeffs.assign(na, 0.0);
  std::mt19937 rgen(spec.seed + 1000003u);
  for (int i = 0; i < ns; ++i)
    inst.reward.next_state_coeffs[i] = uniform(rgen, -1.0, 1.0);
  inst.reward.action_coeffs[0] = uniform(rgen, -0.3, 0.3);
  AbsTerm term;
  term.weight = uniform(rgen, 0.2, 1.0);
  term.target = uniform(rgen, -0.3, 0.3);
  term.next_state_coeffs.assign(ns, 0.0);
  term.next_state_coeffs[0] = 1.0;
  term.action_coeffs.assign(na, 0.0);
  inst.reward.abs_terms.push_back(std::move(term));
  return {std::move(inst), std::move(net)};
}

}  // namespace

void DomainSpec::validate() const {
  if (size <= 0) throw Error("domain spec: size must be positive");
  if (width <= 0) throw Error("domain spec: width must be positive");
  if (horizon < 1) throw Error("domain spec: horizon must be >= 1");
}

std::pair<PlanningInstance, NeuralNet> generate(const DomainSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case DomainSpec::Kind::Navigation:
      return navigation(spec);
    case DomainSpec::Kind::Reservoir:
      return reservoir(spec);
    case DomainSpec::Kind::Hvac:
      return hvac(spec);
    case DomainSpec::Kind::Random:
      return random_instance(spec);
  }
  throw Error("domain spec: unknown kind");
}

}  // namespace reluplan
