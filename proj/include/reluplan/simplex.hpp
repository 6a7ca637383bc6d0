// SPDX-License-Identifier: Apache-2.0
//
// Dense tableau primal simplex for LPs with general variable bounds.
// Two phases (artificial variables), Dantzig pricing with a Bland's-rule
// fallback after a degenerate-pivot budget. Deterministic: fixed pivot
// rules, ties broken by lowest index.

#pragma once

#include <cstdint>

#include "reluplan/model.hpp"

namespace reluplan {

struct SimplexOptions {
  double feas_tol = 1e-7;
  double opt_tol = 1e-9;
  double pivot_tol = 1e-9;
  int degenerate_pivot_budget = 1000;  // Dantzig pivots before Bland's rule
  std::int64_t max_iters = 0;          // 0 = scale with model size
};

/// Solves the model as an LP: binaries are relaxed to their bounds, the
/// quadratic part must be absent. Throws NumericError if the method stalls.
LpSolution solve_lp(const Model& model, const SimplexOptions& opts = {});

}  // namespace reluplan
