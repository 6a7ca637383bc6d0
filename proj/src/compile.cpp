// SPDX-License-Identifier: Apache-2.0

#include "reluplan/compile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reluplan/errors.hpp"
#include "reluplan/simplex.hpp"

namespace reluplan {

namespace {

std::string tag(const std::string& stem, int id, int t) {
  return stem + std::to_string(id) + "_t" + std::to_string(t);
}

class Compiler {
 public:
  Compiler(const PlanningInstance& instance, const NeuralNet& net,
           const NetworkBounds& bounds)
      : inst_(instance), net_(net), nb_(bounds) {
    inst_.validate(net_);
    if (static_cast<int>(nb_.units.size()) != net_.num_hidden_units())
      throw DimensionError("compile: bounds were computed for a different net");
    state_to_output_.assign(net_.num_states(), -1);
    for (int o = 0; o < net_.output_width(); ++o)
      state_to_output_[net_.output_states()[o]] = o;
  }

  CompiledModel base() {
    CompiledModel cm;
    cm.horizon = inst_.horizon;
    cm.intervals = 0;
    cm.unit_bounds = nb_.units;
    build_variables(cm);
    build_objective(cm);
    build_constraints(cm);
    cm.model.validate();
    return cm;
  }

  CompiledModel strengthened(const RewardPotentials& pot) {
    if (pot.num_units() != net_.num_hidden_units())
      throw Error("compile: potentials cover " +
                  std::to_string(pot.num_units()) + " units, network has " +
                  std::to_string(net_.num_hidden_units()));
    if (pot.intervals < 1)
      throw Error("compile: potentials need at least one interval");
    for (const auto& up : pot.units)
      if (static_cast<int>(up.v_on.size()) != pot.intervals)
        throw Error("compile: potentials interval count mismatch");

    CompiledModel cm = base();
    const int N = pot.intervals;
    cm.intervals = N;
    const int H = inst_.horizon;
    const int U = net_.num_hidden_units();

    // Interval indicator variables for live units.
    cm.index.pi.assign(H, std::vector<int>(static_cast<std::size_t>(U) * N, -1));
    for (int t = 1; t <= H; ++t)
      for (int u = 0; u < U; ++u) {
        if (!cm.unit_live(u)) continue;
        for (int i = 1; i <= N; ++i)
          cm.index.pi[t - 1][static_cast<std::size_t>(u) * N + i - 1] =
              cm.model.add_var("Pi_" + std::to_string(i) + "_u" +
                                   std::to_string(u) + "_t" + std::to_string(t),
                               VarKind::Binary, 0.0, 1.0);
      }

    for (int t = 1; t <= H; ++t) {
      for (int u = 0; u < U; ++u) {
        if (!cm.unit_live(u)) continue;
        const double nu = nb_.units[u].out_hi;
        // Exactly one interval is selected iff the unit is active.
        std::vector<std::pair<int, double>> link;
        for (int i = 1; i <= N; ++i)
          link.emplace_back(cm.interval_bit(i, u, t), 1.0);
        link.emplace_back(cm.relu_bit(u, t), -1.0);
        cm.model.add_constraint(tag("Link_u", u, t), std::move(link),
                                ConstraintSense::Equal, 0.0);
        // Selected interval brackets the unit output.
        for (int i = 1; i <= N; ++i) {
          const double lo_coef = nu * (i - 1) / N;
          const double hi_coef = nu - nu * static_cast<double>(i) / N;
          if (i > 1)
            cm.model.add_constraint(
                "IntLo_" + std::to_string(i) + "_u" + std::to_string(u) + "_t" +
                    std::to_string(t),
                {{cm.interval_bit(i, u, t), lo_coef}, {cm.relu_out(u, t), -1.0}},
                ConstraintSense::LessEqual, 0.0);
          if (i < N)
            cm.model.add_constraint(
                "IntHi_" + std::to_string(i) + "_u" + std::to_string(u) + "_t" +
                    std::to_string(t),
                {{cm.relu_out(u, t), 1.0}, {cm.interval_bit(i, u, t), hi_coef}},
                ConstraintSense::LessEqual, nu);
        }
      }

      // Reward bound: sum of selected potentials >= step reward.
      std::vector<std::pair<int, double>> row;
      double rhs = inst_.reward.constant;
      for (int u = 0; u < U; ++u) {
        rhs -= pot.units[u].v_off;
        if (!cm.unit_live(u)) continue;
        for (int i = 1; i <= N; ++i)
          row.emplace_back(cm.interval_bit(i, u, t), pot.units[u].v_on[i - 1]);
        row.emplace_back(cm.relu_bit(u, t), -pot.units[u].v_off);
      }
      for (int s = 0; s < inst_.num_states(); ++s)
        if (inst_.reward.next_state_coeffs[s] != 0.0)
          row.emplace_back(cm.state_var(s, t + 1),
                           -inst_.reward.next_state_coeffs[s]);
      for (int a = 0; a < inst_.num_actions(); ++a)
        if (inst_.reward.action_coeffs[a] != 0.0)
          row.emplace_back(cm.action_var(a, t), -inst_.reward.action_coeffs[a]);
      for (std::size_t j = 0; j < inst_.reward.abs_terms.size(); ++j)
        if (inst_.reward.abs_terms[j].weight != 0.0)
          row.emplace_back(cm.reward_aux(static_cast<int>(j), t),
                           inst_.reward.abs_terms[j].weight);
      cm.model.add_constraint("Bound_t" + std::to_string(t), std::move(row),
                              ConstraintSense::GreaterEqual, rhs);
    }
    cm.model.validate();
    return cm;
  }

 private:
  PlanningInstance inst_;
  const NeuralNet& net_;
  const NetworkBounds& nb_;
  std::vector<int> state_to_output_;

  void build_variables(CompiledModel& cm) {
    const int H = inst_.horizon;
    const int U = net_.num_hidden_units();
    Model& m = cm.model;
    m.objective_sense = ObjectiveSense::Maximize;

    cm.index.x.assign(H, std::vector<int>(inst_.num_actions(), -1));
    for (int t = 1; t <= H; ++t)
      for (int a = 0; a < inst_.num_actions(); ++a)
        cm.index.x[t - 1][a] =
            m.add_var(tag("X_a", a, t), VarKind::Continuous,
                      inst_.action_vars[a].lo, inst_.action_vars[a].hi);

    cm.index.y.assign(H + 1, std::vector<int>(inst_.num_states(), -1));
    for (int t = 1; t <= H + 1; ++t)
      for (int s = 0; s < inst_.num_states(); ++s) {
        double lo = inst_.state_vars[s].lo;
        double hi = inst_.state_vars[s].hi;
        if (t == 1 && inst_.initial[s].lo < inst_.initial[s].hi) {
          lo = std::max(lo, inst_.initial[s].lo);
          hi = std::min(hi, inst_.initial[s].hi);
        }
        cm.index.y[t - 1][s] = m.add_var(tag("Y_s", s, t), VarKind::Continuous, lo, hi);
      }

    cm.index.p.assign(H, std::vector<int>(U, -1));
    cm.index.pb.assign(H, std::vector<int>(U, -1));
    for (int t = 1; t <= H; ++t)
      for (int u = 0; u < U; ++u)
        cm.index.p[t - 1][u] = m.add_var(tag("P_u", u, t), VarKind::Continuous, 0.0,
                                    nb_.units[u].out_hi);
    for (int t = 1; t <= H; ++t)
      for (int u = 0; u < U; ++u)
        cm.index.pb[t - 1][u] =
            m.add_var(tag("Pb_u", u, t), VarKind::Binary, 0.0, 1.0);

    const int nz = static_cast<int>(inst_.reward.abs_terms.size());
    cm.index.z.assign(H, std::vector<int>(nz, -1));
    for (int t = 1; t <= H; ++t)
      for (int j = 0; j < nz; ++j)
        cm.index.z[t - 1][j] = m.add_var(tag("Z_r", j, t), VarKind::Continuous, 0.0,
                                    abs_term_ceiling(j));
  }

  // Interval bound on |state/action expression| of term j over the domains.
  double abs_term_ceiling(int j) const {
    const AbsTerm& term = inst_.reward.abs_terms[j];
    double lo = -term.target, hi = -term.target;
    for (int s = 0; s < inst_.num_states(); ++s) {
      const double c = term.next_state_coeffs[s];
      lo += std::min(c * inst_.state_vars[s].lo, c * inst_.state_vars[s].hi);
      hi += std::max(c * inst_.state_vars[s].lo, c * inst_.state_vars[s].hi);
    }
    for (int a = 0; a < inst_.num_actions(); ++a) {
      const double c = term.action_coeffs[a];
      lo += std::min(c * inst_.action_vars[a].lo, c * inst_.action_vars[a].hi);
      hi += std::max(c * inst_.action_vars[a].lo, c * inst_.action_vars[a].hi);
    }
    return std::max({std::abs(lo), std::abs(hi), 0.0});
  }

  void build_objective(CompiledModel& cm) {
    Model& m = cm.model;
    for (int t = 1; t <= inst_.horizon; ++t) {
      for (int s = 0; s < inst_.num_states(); ++s)
        m.obj_linear[cm.state_var(s, t + 1)] +=
            inst_.reward.next_state_coeffs[s];
      for (int a = 0; a < inst_.num_actions(); ++a)
        m.obj_linear[cm.action_var(a, t)] += inst_.reward.action_coeffs[a];
      for (std::size_t j = 0; j < inst_.reward.abs_terms.size(); ++j)
        m.obj_linear[cm.reward_aux(static_cast<int>(j), t)] -=
            inst_.reward.abs_terms[j].weight;
      m.obj_constant += inst_.reward.constant;
    }
  }

  void add_in_terms(std::vector<std::pair<int, double>>& row,
                    const UnitInputs& in, const CompiledModel& cm, int t,
                    double scale) const {
    for (const auto& [s, w] : in.states)
      row.emplace_back(cm.state_var(s, t), scale * w);
    for (const auto& [a, w] : in.actions)
      row.emplace_back(cm.action_var(a, t), scale * w);
    for (const auto& [u, w] : in.hidden)
      row.emplace_back(cm.relu_out(u, t), scale * w);
  }

  void build_constraints(CompiledModel& cm) {
    Model& m = cm.model;
    const int H = inst_.horizon;
    const int U = net_.num_hidden_units();

    // Initial state equalities for fixed values.
    for (int s = 0; s < inst_.num_states(); ++s)
      if (inst_.initial[s].lo == inst_.initial[s].hi)
        m.add_constraint("I_s" + std::to_string(s),
                         {{cm.state_var(s, 1), 1.0}}, ConstraintSense::Equal,
                         inst_.initial[s].lo);

    // Global constraints at every step.
    for (int t = 1; t <= H; ++t)
      for (std::size_t c = 0; c < inst_.constraints.size(); ++c) {
        const StepConstraint& con = inst_.constraints[c];
        std::vector<std::pair<int, double>> row;
        for (int s = 0; s < inst_.num_states(); ++s)
          if (con.state_coeffs[s] != 0.0)
            row.emplace_back(cm.state_var(s, t), con.state_coeffs[s]);
        for (int a = 0; a < inst_.num_actions(); ++a)
          if (con.action_coeffs[a] != 0.0)
            row.emplace_back(cm.action_var(a, t), con.action_coeffs[a]);
        m.add_constraint(tag("C", static_cast<int>(c), t), std::move(row),
                         con.sense, con.rhs);
      }

    // Goal intervals at the final step, when tighter than the domain.
    for (int s = 0; s < inst_.num_states(); ++s) {
      if (inst_.goal[s].lo > inst_.state_vars[s].lo)
        m.add_constraint("G_s" + std::to_string(s) + "_lo",
                         {{cm.state_var(s, H + 1), 1.0}},
                         ConstraintSense::GreaterEqual, inst_.goal[s].lo);
      if (inst_.goal[s].hi < inst_.state_vars[s].hi)
        m.add_constraint("G_s" + std::to_string(s) + "_hi",
                         {{cm.state_var(s, H + 1), 1.0}},
                         ConstraintSense::LessEqual, inst_.goal[s].hi);
    }

    // Reward linearization: z_j >= |expression_j| via two inequalities.
    for (int t = 1; t <= H; ++t)
      for (std::size_t j = 0; j < inst_.reward.abs_terms.size(); ++j) {
        const AbsTerm& term = inst_.reward.abs_terms[j];
        std::vector<std::pair<int, double>> pos, neg;
        for (int s = 0; s < inst_.num_states(); ++s)
          if (term.next_state_coeffs[s] != 0.0) {
            pos.emplace_back(cm.state_var(s, t + 1), term.next_state_coeffs[s]);
            neg.emplace_back(cm.state_var(s, t + 1), -term.next_state_coeffs[s]);
          }
        for (int a = 0; a < inst_.num_actions(); ++a)
          if (term.action_coeffs[a] != 0.0) {
            pos.emplace_back(cm.action_var(a, t), term.action_coeffs[a]);
            neg.emplace_back(cm.action_var(a, t), -term.action_coeffs[a]);
          }
        const int z = cm.reward_aux(static_cast<int>(j), t);
        pos.emplace_back(z, -1.0);
        neg.emplace_back(z, -1.0);
        m.add_constraint(tag("Zp_r", static_cast<int>(j), t), std::move(pos),
                         ConstraintSense::LessEqual, term.target);
        m.add_constraint(tag("Zn_r", static_cast<int>(j), t), std::move(neg),
                         ConstraintSense::LessEqual, -term.target);
      }

    // Big-M activation rows and the output equalities.
    for (int t = 1; t <= H; ++t) {
      for (int u = 0; u < U; ++u) {
        const UnitInputs in = net_.hidden_unit_inputs(u);
        const double mu = nb_.units[u].big_m;
        m.add_constraint(
            tag("Act_u", u, t),
            {{cm.relu_out(u, t), 1.0}, {cm.relu_bit(u, t), -mu}},
            ConstraintSense::LessEqual, 0.0);
        std::vector<std::pair<int, double>> deact{{cm.relu_out(u, t), 1.0},
                                                  {cm.relu_bit(u, t), mu}};
        add_in_terms(deact, in, cm, t, -1.0);
        m.add_constraint(tag("Deact_u", u, t), std::move(deact),
                         ConstraintSense::LessEqual, mu + in.bias);
        std::vector<std::pair<int, double>> pass{{cm.relu_out(u, t), 1.0}};
        add_in_terms(pass, in, cm, t, -1.0);
        m.add_constraint(tag("Pass_u", u, t), std::move(pass),
                         ConstraintSense::GreaterEqual, in.bias);
      }
      for (int s = 0; s < inst_.num_states(); ++s) {
        const UnitInputs in = net_.output_unit_inputs(state_to_output_[s]);
        std::vector<std::pair<int, double>> row{{cm.state_var(s, t + 1), 1.0}};
        add_in_terms(row, in, cm, t, -1.0);
        m.add_constraint(tag("Out_s", s, t), std::move(row),
                         ConstraintSense::Equal, in.bias);
      }
    }
  }
};

}  // namespace

CompiledModel compile_base(const PlanningInstance& instance,
                           const NeuralNet& net, const NetworkBounds& bounds) {
  Compiler compiler(instance, net, bounds);
  return compiler.base();
}

CompiledModel compile_strengthened(const PlanningInstance& instance,
                                   const NeuralNet& net,
                                   const NetworkBounds& bounds,
                                   const RewardPotentials& potentials) {
  Compiler compiler(instance, net, bounds);
  return compiler.strengthened(potentials);
}

double root_relaxation(const CompiledModel& compiled) {
  const LpSolution sol = solve_lp(compiled.model.relaxed());
  if (sol.status != SolveStatus::Optimal)
    throw Error("root relaxation is " + to_string(sol.status));
  return sol.objective;
}

}  // namespace reluplan
