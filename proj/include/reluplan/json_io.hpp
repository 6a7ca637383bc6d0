// SPDX-License-Identifier: Apache-2.0
//
// JSON (de)serialization of instances (problem + network in one document),
// potentials, plans and solver stats, plus small file helpers.

#pragma once

#include <string>

#include "reluplan/instance.hpp"
#include "reluplan/model.hpp"
#include "reluplan/nn.hpp"
#include "reluplan/potentials_types.hpp"

namespace reluplan {

struct LoadedInstance {
  PlanningInstance instance;
  NeuralNet net;
};

/// Parses an instance document. The network is either inline under
/// "network" or referenced by "network_file" (resolved against base_dir)
/// for externally supplied weight files in the same layer schema.
LoadedInstance parse_instance_json(const std::string& text,
                                   const std::string& base_dir = "");
LoadedInstance load_instance_file(const std::string& path);

std::string instance_to_json(const PlanningInstance& instance,
                             const NeuralNet& net);

std::string potentials_to_json(const RewardPotentials& pot);
RewardPotentials potentials_from_json(const std::string& text);

std::string plan_to_json(const Plan& plan, const Trajectory& trajectory,
                         double objective);

std::string stats_to_json(const SolveStats& stats);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace reluplan
