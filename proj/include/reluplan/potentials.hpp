// SPDX-License-Identifier: Apache-2.0
//
// Optimal reward potentials by constraint generation. The subproblem is a
// one-step MILP that maximizes the gap between the reward and the current
// pattern-weighted potential sum; the master is a regularized QP over all
// generated patterns. A brute-force oracle enumerates every activation
// pattern for validation at desk scale.

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "reluplan/instance.hpp"
#include "reluplan/model.hpp"
#include "reluplan/nn.hpp"
#include "reluplan/potentials_types.hpp"

namespace reluplan {

struct PotentialsConfig {
  int intervals = 1;     // N
  double lambda = -1.0;  // < 0: default 1 / sqrt(max big-M)
  double epsilon = 1e-6;
  std::int64_t max_iterations = 0;  // 0: (N+1)^|U| + 1, capped at 1e6
  MilpParams subproblem_params;     // defaults: exact, unlimited
};

struct SubproblemResult {
  std::vector<int> pattern;  // per unit: 0 = off, i in 1..N = interval i
  double r_star = 0.0;       // max reward under the returned pattern
  double violation = 0.0;    // r_star - potential sum of the pattern
  std::vector<double> witness_state;
  std::vector<double> witness_action;
  std::vector<double> witness_next;
};

/// Master-problem context: which units exist, how many intervals, the
/// regularizer and the a-priori box on potential values.
struct MasterSetup {
  int intervals = 1;
  double lambda = 0.0;
  double var_bound = 0.0;
  std::vector<char> live;  // per unit; dead units carry only v_off

  static MasterSetup from(const PlanningInstance& instance,
                          const NetworkBounds& bounds, int intervals,
                          double lambda);
};

struct MasterResult {
  RewardPotentials potentials;
  double objective = 0.0;
};

/// Most-violating pattern for a candidate, via the one-step MILP with
/// global constraints and the big-M network rows (no initial/goal rows:
/// the bound must hold for every feasible one-step transition).
SubproblemResult solve_subproblem(const NeuralNet& net,
                                  const PlanningInstance& instance,
                                  const NetworkBounds& bounds,
                                  const RewardPotentials& candidate,
                                  const MilpParams& params = {});

/// Minimizes the regularized potential sum subject to one covering
/// constraint per generated pattern. Always feasible for |U| >= 1; throws
/// on a degenerate instance with no hidden units and positive reward.
MasterResult solve_master(const MasterSetup& setup,
                          const std::vector<CgIteration>& cuts);

/// Alternates master and subproblem until the violation drops to epsilon.
std::pair<RewardPotentials, CgTrace> compute_potentials(
    const NeuralNet& net, const PlanningInstance& instance,
    const NetworkBounds& bounds, const PotentialsConfig& config = {});

/// Exact optimum by enumerating every activation/interval pattern, solving
/// the per-pattern one-step LP, and running a single master solve.
/// Guarded to (intervals+1)^(live units) <= 1e5.
MasterResult oracle_enumerate(const NeuralNet& net,
                              const PlanningInstance& instance,
                              const NetworkBounds& bounds, int intervals,
                              double lambda);

/// Worst-case certificate slack at a simulated one-step transition:
/// min over admissible indicator labelings of the potential sum, minus the
/// step reward. Nonnegative within tolerance iff the bound covers the point.
double certificate_slack(const RewardPotentials& pot,
                         const std::vector<UnitBounds>& units,
                         std::span<const double> unit_pre, double reward,
                         double boundary_tol = 1e-9);

/// Default regularizer weight: 1/sqrt(M) with M the largest per-unit
/// big-M (1 when the network has no switching units).
double default_lambda(const NetworkBounds& bounds);

}  // namespace reluplan
