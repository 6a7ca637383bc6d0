// SPDX-License-Identifier: Apache-2.0
//
// Active-set solver for convex QPs with a diagonal quadratic objective
// (min c'x + sum q_j x_j^2, q_j >= 0) over linear constraints and bounds.
// Working-set steps solve dense KKT systems; a model without quadratic
// terms degenerates to the simplex.

#pragma once

#include "reluplan/model.hpp"
#include "reluplan/simplex.hpp"

namespace reluplan {

struct QpOptions {
  double kkt_tol = 1e-8;
  double tie_tol = 1e-12;
  int max_iters = 0;  // 0 = scale with model size
  SimplexOptions lp_opts;
};

LpSolution solve_qp(const Model& model, const QpOptions& opts = {});

}  // namespace reluplan
