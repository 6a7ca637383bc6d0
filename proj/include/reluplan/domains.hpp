// SPDX-License-Identifier: Apache-2.0
//
// Desk-scale instance generators: hand-built ReLU dynamics for a
// navigation maze, reservoir levels and room heating, plus a seeded
// random-network generator for property tests. All outputs are
// deterministic functions of the spec.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "reluplan/instance.hpp"
#include "reluplan/nn.hpp"

namespace reluplan {

struct DomainSpec {
  enum class Kind { Navigation, Reservoir, Hvac, Random };
  Kind kind = Kind::Navigation;
  int size = 8;    // maze side / reservoir count / room count
  int width = 8;   // hidden-layer width for the named domains
  std::vector<int> widths;  // random networks: full width chain
  std::uint32_t seed = 1;
  int horizon = 10;

  void validate() const;
};

std::pair<PlanningInstance, NeuralNet> generate(const DomainSpec& spec);

}  // namespace reluplan
