// SPDX-License-Identifier: Apache-2.0

#include "reluplan/json_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "reluplan/errors.hpp"

namespace reluplan {

namespace {

using nlohmann::json;

json interval_to_json(const Interval& iv) {
  if (iv.lo == iv.hi) return iv.lo;
  return json{{"lo", iv.lo}, {"hi", iv.hi}};
}

Interval interval_from_json(const json& j) {
  if (j.is_number()) {
    const double v = j.get<double>();
    return {v, v};
  }
  return {j.at("lo").get<double>(), j.at("hi").get<double>()};
}

json net_to_json(const NeuralNet& net) {
  json jn;
  std::vector<int> widths{net.input_width()};
  for (const Layer& l : net.layers()) widths.push_back(l.out_width);
  jn["widths"] = widths;
  json layers = json::array();
  for (const Layer& l : net.layers()) {
    json jl;
    json rows = json::array();
    for (int o = 0; o < l.out_width; ++o) {
      json row = json::array();
      for (int i = 0; i < l.in_width; ++i) row.push_back(l.weight(o, i));
      rows.push_back(std::move(row));
    }
    jl["w"] = std::move(rows);
    jl["b"] = l.bias;
    jl["act"] = l.act == Activation::Relu ? "relu" : "linear";
    layers.push_back(std::move(jl));
  }
  jn["layers"] = std::move(layers);
  jn["state_inputs"] = net.state_inputs();
  jn["action_inputs"] = net.action_inputs();
  jn["output_states"] = net.output_states();
  return jn;
}

NeuralNet net_from_json(const json& jn) {
  if (!jn.contains("layers")) throw IoError("network: missing layers");
  std::vector<Layer> layers;
  std::vector<int> widths;
  if (jn.contains("widths")) widths = jn["widths"].get<std::vector<int>>();
  std::size_t li = 0;
  for (const json& jl : jn.at("layers")) {
    Layer l;
    const json& rows = jl.at("w");
    l.out_width = static_cast<int>(rows.size());
    if (l.out_width == 0) throw IoError("network: empty weight matrix");
    l.in_width = static_cast<int>(rows.front().size());
    for (const json& row : rows) {
      if (static_cast<int>(row.size()) != l.in_width)
        throw IoError("network: ragged weight matrix");
      for (const json& v : row) l.weights.push_back(v.get<double>());
    }
    l.bias = jl.at("b").get<std::vector<double>>();
    const std::string act = jl.at("act").get<std::string>();
    if (act == "relu")
      l.act = Activation::Relu;
    else if (act == "linear")
      l.act = Activation::Linear;
    else
      throw IoError("network: unknown activation '" + act + "'");
    if (!widths.empty()) {
      if (li + 1 >= widths.size() || widths[li] != l.in_width ||
          widths[li + 1] != l.out_width)
        throw IoError("network: layer " + std::to_string(li) +
                      " contradicts the declared widths");
    }
    ++li;
    layers.push_back(std::move(l));
  }
  return NeuralNet::create(std::move(layers),
                           jn.at("state_inputs").get<std::vector<int>>(),
                           jn.at("action_inputs").get<std::vector<int>>(),
                           jn.at("output_states").get<std::vector<int>>());
}

ConstraintSense sense_from_string(const std::string& s) {
  if (s == "<=") return ConstraintSense::LessEqual;
  if (s == ">=") return ConstraintSense::GreaterEqual;
  if (s == "=" || s == "==") return ConstraintSense::Equal;
  throw IoError("unknown constraint sense '" + s + "'");
}

std::string sense_to_string(ConstraintSense s) {
  switch (s) {
    case ConstraintSense::LessEqual:
      return "<=";
    case ConstraintSense::GreaterEqual:
      return ">=";
    case ConstraintSense::Equal:
      return "=";
  }
  return "?";
}

std::vector<VarDecl> vars_from_json(const json& arr) {
  std::vector<VarDecl> out;
  for (const json& jv : arr)
    out.push_back(VarDecl{jv.at("name").get<std::string>(),
                          jv.at("lo").get<double>(),
                          jv.at("hi").get<double>()});
  return out;
}

}  // namespace

LoadedInstance parse_instance_json(const std::string& text,
                                   const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("instance: invalid JSON: ") + e.what());
  }
  try {
    json jnet;
    if (doc.contains("network")) {
      jnet = doc["network"];
    } else if (doc.contains("network_file")) {
      const std::filesystem::path p =
          std::filesystem::path(base_dir) /
          doc["network_file"].get<std::string>();
      jnet = json::parse(read_file(p.string()));
    } else {
      throw IoError("instance: missing network / network_file");
    }
    LoadedInstance li{PlanningInstance{}, net_from_json(jnet)};
    PlanningInstance& inst = li.instance;
    inst.name = doc.value("name", std::string{});
    inst.synthetic = doc.value("synthetic", false);
    inst.state_vars = vars_from_json(doc.at("state_vars"));
    inst.action_vars = doc.contains("action_vars")
                           ? vars_from_json(doc["action_vars"])
                           : std::vector<VarDecl>{};
    for (const json& jv : doc.at("initial"))
      inst.initial.push_back(interval_from_json(jv));
    for (const json& jv : doc.at("goal"))
      inst.goal.push_back(interval_from_json(jv));
    if (doc.contains("constraints"))
      for (const json& jc : doc["constraints"]) {
        StepConstraint c;
        c.name = jc.value("name", std::string{});
        c.state_coeffs = jc.at("state").get<std::vector<double>>();
        c.action_coeffs = jc.at("action").get<std::vector<double>>();
        c.sense = sense_from_string(jc.at("sense").get<std::string>());
        c.rhs = jc.at("rhs").get<double>();
        inst.constraints.push_back(std::move(c));
      }
    const json& jr = doc.at("reward");
    inst.reward.constant = jr.value("constant", 0.0);
    inst.reward.next_state_coeffs =
        jr.at("next_state").get<std::vector<double>>();
    inst.reward.action_coeffs = jr.at("action").get<std::vector<double>>();
    if (jr.contains("abs_terms"))
      for (const json& jt : jr["abs_terms"]) {
        AbsTerm t;
        t.weight = jt.at("weight").get<double>();
        t.target = jt.at("target").get<double>();
        t.next_state_coeffs = jt.at("next_state").get<std::vector<double>>();
        t.action_coeffs = jt.at("action").get<std::vector<double>>();
        inst.reward.abs_terms.push_back(std::move(t));
      }
    inst.horizon = doc.at("horizon").get<int>();
    inst.validate(li.net);
    return li;
  } catch (const json::exception& e) {
    throw IoError(std::string("instance: ") + e.what());
  }
}

LoadedInstance load_instance_file(const std::string& path) {
  const std::filesystem::path p(path);
  return parse_instance_json(read_file(path), p.parent_path().string());
}

std::string instance_to_json(const PlanningInstance& instance,
                             const NeuralNet& net) {
  json doc;
  if (!instance.name.empty()) doc["name"] = instance.name;
  doc["synthetic"] = instance.synthetic;
  doc["network"] = net_to_json(net);
  json sv = json::array();
  for (const VarDecl& v : instance.state_vars)
    sv.push_back(json{{"name", v.name}, {"lo", v.lo}, {"hi", v.hi}});
  doc["state_vars"] = std::move(sv);
  json av = json::array();
  for (const VarDecl& v : instance.action_vars)
    av.push_back(json{{"name", v.name}, {"lo", v.lo}, {"hi", v.hi}});
  doc["action_vars"] = std::move(av);
  json init = json::array();
  for (const Interval& iv : instance.initial)
    init.push_back(interval_to_json(iv));
  doc["initial"] = std::move(init);
  json goal = json::array();
  for (const Interval& iv : instance.goal) goal.push_back(interval_to_json(iv));
  doc["goal"] = std::move(goal);
  json cons = json::array();
  for (const StepConstraint& c : instance.constraints)
    cons.push_back(json{{"name", c.name},
                        {"state", c.state_coeffs},
                        {"action", c.action_coeffs},
                        {"sense", sense_to_string(c.sense)},
                        {"rhs", c.rhs}});
  doc["constraints"] = std::move(cons);
  json jr;
  jr["constant"] = instance.reward.constant;
  jr["next_state"] = instance.reward.next_state_coeffs;
  jr["action"] = instance.reward.action_coeffs;
  json terms = json::array();
  for (const AbsTerm& t : instance.reward.abs_terms)
    terms.push_back(json{{"weight", t.weight},
                         {"target", t.target},
                         {"next_state", t.next_state_coeffs},
                         {"action", t.action_coeffs}});
  jr["abs_terms"] = std::move(terms);
  doc["reward"] = std::move(jr);
  doc["horizon"] = instance.horizon;
  return doc.dump(2) + "\n";
}

std::string potentials_to_json(const RewardPotentials& pot) {
  json doc;
  doc["N"] = pot.intervals;
  doc["lambda"] = pot.lambda;
  doc["epsilon"] = pot.epsilon;
  json units = json::array();
  for (const UnitPotentials& u : pot.units)
    units.push_back(json{{"v_off", u.v_off}, {"v_on", u.v_on}});
  doc["units"] = std::move(units);
  doc["certified_violation"] = pot.certified_violation;
  return doc.dump(2) + "\n";
}

RewardPotentials potentials_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    RewardPotentials pot;
    pot.intervals = doc.at("N").get<int>();
    pot.lambda = doc.value("lambda", 0.0);
    pot.epsilon = doc.value("epsilon", 1e-6);
    pot.certified_violation = doc.value("certified_violation", 0.0);
    for (const json& ju : doc.at("units")) {
      UnitPotentials u;
      u.v_off = ju.at("v_off").get<double>();
      u.v_on = ju.at("v_on").get<std::vector<double>>();
      if (static_cast<int>(u.v_on.size()) != pot.intervals)
        throw IoError("potentials: v_on length != N");
      pot.units.push_back(std::move(u));
    }
    return pot;
  } catch (const json::exception& e) {
    throw IoError(std::string("potentials: ") + e.what());
  }
}

std::string plan_to_json(const Plan& plan, const Trajectory& trajectory,
                         double objective) {
  json doc;
  doc["actions"] = plan.actions;
  doc["states"] = trajectory.states;
  doc["step_rewards"] = trajectory.step_rewards;
  doc["total_reward"] = trajectory.total_reward;
  doc["objective"] = objective;
  return doc.dump(2) + "\n";
}

std::string stats_to_json(const SolveStats& stats) {
  json doc;
  doc["status"] = to_string(stats.status);
  if (stats.primal)
    doc["primal"] = *stats.primal;
  else
    doc["primal"] = nullptr;
  if (std::isfinite(stats.dual))
    doc["dual"] = stats.dual;
  else
    doc["dual"] = nullptr;
  doc["nodes_open"] = stats.nodes_open;
  doc["nodes_closed"] = stats.nodes_closed;
  doc["solve_seconds"] = stats.solve_seconds;
  json tl = json::array();
  for (const TimelinePoint& p : stats.timeline) {
    json jp;
    jp["t"] = p.elapsed;
    if (std::isfinite(p.dual))
      jp["dual"] = p.dual;
    else
      jp["dual"] = nullptr;
    if (p.primal)
      jp["primal"] = *p.primal;
    else
      jp["primal"] = nullptr;
    jp["open"] = p.nodes_open;
    jp["closed"] = p.nodes_closed;
    tl.push_back(std::move(jp));
  }
  doc["timeline"] = std::move(tl);
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out.good()) throw IoError("write failed for " + path);
}

}  // namespace reluplan
