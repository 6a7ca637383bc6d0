// SPDX-License-Identifier: Apache-2.0
//
// Branch-and-bound over the binary variables of a Model. Deterministic
// policy: best-bound node selection, most-fractional branching, ties by
// lowest variable id, children evaluated 0-branch first.

#pragma once

#include "reluplan/model.hpp"
#include "reluplan/simplex.hpp"

namespace reluplan {

/// Solves a MILP with a linear objective. Limit hits are not errors: the
/// result carries the best incumbent and bound with status Limit.
MilpResult solve_milp(const Model& model, const MilpParams& params = {},
                      const SimplexOptions& lp_opts = {});

}  // namespace reluplan
