// SPDX-License-Identifier: Apache-2.0
//
// Reader/writer for the sectioned LP file format (Maximize/Subject To/
// Bounds/Binary/End) so compiled models can be handed to external solvers
// and read back. Quadratic objectives use the bracketed [ ... ] / 2 syntax.

#pragma once

#include <string>

#include "reluplan/model.hpp"

namespace reluplan {

std::string write_lp(const Model& model);

/// Parses LP-format text into a Model. Variables keep their first-appearance
/// order; unmentioned bounds default to [0, +inf) per the format.
Model parse_lp(const std::string& text);

}  // namespace reluplan
