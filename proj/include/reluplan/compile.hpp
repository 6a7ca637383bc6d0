// SPDX-License-Identifier: Apache-2.0
//
// Compiles a planning instance with a ReLU transition network into a MILP:
// the base big-M encoding of the chained network, and a strengthened
// variant that adds reward-bounding constraints over precomputed unit
// potentials with interval indicators.

#pragma once

#include <string>
#include <vector>

#include "reluplan/instance.hpp"
#include "reluplan/model.hpp"
#include "reluplan/nn.hpp"
#include "reluplan/potentials_types.hpp"

namespace reluplan {

class CompiledModel {
 public:
  Model model;
  int horizon = 0;
  int intervals = 0;  // interval count N; 0 = base encoding

  /// Model variable ids per time step, filled by the compiler.
  struct VarIndex {
    std::vector<std::vector<int>> x;   // [t-1][action]
    std::vector<std::vector<int>> y;   // [t-1][state], t up to horizon+1
    std::vector<std::vector<int>> p;   // [t-1][unit]
    std::vector<std::vector<int>> pb;  // [t-1][unit]
    std::vector<std::vector<int>> z;   // [t-1][abs term]
    std::vector<std::vector<int>> pi;  // [t-1][unit * N + i - 1]
  };
  VarIndex index;
  std::vector<UnitBounds> unit_bounds;

  // Lookups. Time steps are 1-based; states run to horizon+1.
  int action_var(int a, int t) const { return index.x.at(t - 1).at(a); }
  int state_var(int s, int t) const { return index.y.at(t - 1).at(s); }
  int relu_out(int u, int t) const { return index.p.at(t - 1).at(u); }
  int relu_bit(int u, int t) const { return index.pb.at(t - 1).at(u); }
  int reward_aux(int j, int t) const { return index.z.at(t - 1).at(j); }
  /// i in 1..N; -1 for dead units (they carry no interval bits).
  int interval_bit(int i, int u, int t) const {
    return index.pi.at(t - 1).at(static_cast<std::size_t>(u) * intervals + i -
                                 1);
  }

  bool unit_live(int u) const { return !unit_bounds.at(u).dead(); }
};

/// Base encoding: reward objective, initial/global/goal constraints, big-M
/// ReLU rows and output equalities for every time step.
CompiledModel compile_base(const PlanningInstance& instance,
                           const NeuralNet& net, const NetworkBounds& bounds);

/// Base encoding plus interval indicators and the per-step reward bound
/// derived from certified potentials.
CompiledModel compile_strengthened(const PlanningInstance& instance,
                                   const NeuralNet& net,
                                   const NetworkBounds& bounds,
                                   const RewardPotentials& potentials);

/// Objective of the LP relaxation (binaries relaxed into [0,1]); an upper
/// bound on the MILP optimum for maximization. Throws on infeasible or
/// unbounded relaxations.
double root_relaxation(const CompiledModel& compiled);

}  // namespace reluplan
