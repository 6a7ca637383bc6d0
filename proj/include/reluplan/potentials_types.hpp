// SPDX-License-Identifier: Apache-2.0
//
// Value types shared between the potentials computation and the compiler.

#pragma once

#include <string>
#include <vector>

namespace reluplan {

struct UnitPotentials {
  double v_off = 0.0;
  std::vector<double> v_on;  // one entry per activation interval (N of them)
};

/// Per-unit reward potentials: the pattern-weighted sum of potentials upper
/// bounds the one-step reward for every feasible transition (within the
/// certified violation).
struct RewardPotentials {
  int intervals = 1;  // N
  double lambda = 0.0;
  double epsilon = 0.0;
  std::vector<UnitPotentials> units;
  double certified_violation = 0.0;

  int num_units() const { return static_cast<int>(units.size()); }
};

/// One constraint-generation round: the pattern returned by the subproblem
/// (per unit: 0 = off, i in 1..N = active in interval i), its re-maximized
/// reward, the violation, and the master objective of the round.
struct CgIteration {
  int k = 0;
  std::vector<int> pattern;
  double r_star = 0.0;
  double violation = 0.0;
  double master_objective = 0.0;
  double elapsed_s = 0.0;
};

struct CgTrace {
  std::vector<CgIteration> iterations;

  std::string csv() const;  // header: k,violation,master_obj,elapsed
};

}  // namespace reluplan
