// SPDX-License-Identifier: Apache-2.0

#include "reluplan/potentials.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "reluplan/branch_and_bound.hpp"
#include "reluplan/errors.hpp"
#include "reluplan/qp.hpp"
#include "reluplan/simplex.hpp"

namespace reluplan {

namespace {

using Clock = std::chrono::steady_clock;

// One-step model shared by the subproblem and the oracle: state/action at
// step t, the network rows, the interval linking rows and the reward
// linearization over the next state. Only the objective changes between
// candidate potentials, and only binary bounds between oracle patterns.
class OneStepModel {
 public:
  OneStepModel(const NeuralNet& net, const PlanningInstance& instance,
               const NetworkBounds& bounds, int intervals)
      : net_(net), inst_(instance), nb_(bounds), n_(intervals) {
    if (n_ < 1) throw Error("potentials: interval count must be >= 1");
    inst_.validate(net_);
    build();
  }

  Model model;  // objective filled in by the caller

  int num_units() const { return net_.num_hidden_units(); }
  bool live(int u) const { return !nb_.units[u].dead(); }
  int y_t(int s) const { return y_t_[s]; }
  int x(int a) const { return x_[a]; }
  int y_next(int s) const { return y_next_[s]; }
  int p(int u) const { return p_[u]; }
  int pb(int u) const { return pb_[u]; }
  int pi(int i, int u) const {
    return pi_[static_cast<std::size_t>(u) * n_ + i - 1];
  }
  int z(int j) const { return z_[j]; }
  int intervals() const { return n_; }

  // Objective: maximize reward minus the potential sum of the pattern.
  // With no candidate (nullptr) the objective is the plain reward.
  void set_objective(const RewardPotentials* candidate) {
    std::fill(model.obj_linear.begin(), model.obj_linear.end(), 0.0);
    model.obj_constant = inst_.reward.constant;
    model.objective_sense = ObjectiveSense::Maximize;
    for (int s = 0; s < inst_.num_states(); ++s)
      model.obj_linear[y_next_[s]] = inst_.reward.next_state_coeffs[s];
    for (int a = 0; a < inst_.num_actions(); ++a)
      model.obj_linear[x_[a]] = inst_.reward.action_coeffs[a];
    for (std::size_t j = 0; j < inst_.reward.abs_terms.size(); ++j)
      model.obj_linear[z_[j]] = -inst_.reward.abs_terms[j].weight;
    if (!candidate) return;
    for (int u = 0; u < num_units(); ++u) {
      model.obj_constant -= candidate->units[u].v_off;
      if (!live(u)) continue;
      model.obj_linear[pb_[u]] += candidate->units[u].v_off;
      for (int i = 1; i <= n_; ++i)
        model.obj_linear[pi(i, u)] -= candidate->units[u].v_on[i - 1];
    }
  }

  // Pins the binaries to a concrete pattern (0 = off, i = interval i).
  void fix_pattern(const std::vector<int>& pattern) {
    for (int u = 0; u < num_units(); ++u) {
      if (!live(u)) continue;
      const int on = pattern[u] > 0 ? 1 : 0;
      model.vars[pb_[u]].lo = on;
      model.vars[pb_[u]].hi = on;
      for (int i = 1; i <= n_; ++i) {
        const int sel = pattern[u] == i ? 1 : 0;
        model.vars[pi(i, u)].lo = sel;
        model.vars[pi(i, u)].hi = sel;
      }
    }
  }

  void unfix_pattern() {
    for (int u = 0; u < num_units(); ++u) {
      if (!live(u)) continue;
      model.vars[pb_[u]].lo = 0.0;
      model.vars[pb_[u]].hi = 1.0;
      for (int i = 1; i <= n_; ++i) {
        model.vars[pi(i, u)].lo = 0.0;
        model.vars[pi(i, u)].hi = 1.0;
      }
    }
  }

  std::vector<int> extract_pattern(const std::vector<double>& values) const {
    std::vector<int> pattern(num_units(), 0);
    for (int u = 0; u < num_units(); ++u) {
      if (!live(u) || values[pb_[u]] < 0.5) continue;
      pattern[u] = 1;
      for (int i = 1; i <= n_; ++i)
        if (values[pi(i, u)] > 0.5) {
          pattern[u] = i;
          break;
        }
    }
    return pattern;
  }

 private:
  const NeuralNet& net_;
  PlanningInstance inst_;
  const NetworkBounds& nb_;
  int n_;
  std::vector<int> y_t_, x_, y_next_, p_, pb_, pi_, z_;

  void build() {
    const int U = net_.num_hidden_units();
    for (int s = 0; s < inst_.num_states(); ++s)
      y_t_.push_back(model.add_var("Y_s" + std::to_string(s) + "_t",
                                   VarKind::Continuous,
                                   inst_.state_vars[s].lo,
                                   inst_.state_vars[s].hi));
    for (int a = 0; a < inst_.num_actions(); ++a)
      x_.push_back(model.add_var("X_a" + std::to_string(a), VarKind::Continuous,
                                 inst_.action_vars[a].lo,
                                 inst_.action_vars[a].hi));
    // The next state ranges over whatever the network can produce; the
    // one-step bound must hold there, not only inside the state domain.
    std::vector<int> state_to_output(inst_.num_states(), -1);
    for (int o = 0; o < net_.output_width(); ++o)
      state_to_output[net_.output_states()[o]] = o;
    for (int s = 0; s < inst_.num_states(); ++s) {
      const Interval out = nb_.outputs[state_to_output[s]];
      y_next_.push_back(model.add_var("Y_s" + std::to_string(s) + "_next",
                                      VarKind::Continuous, out.lo, out.hi));
    }
    for (int u = 0; u < U; ++u)
      p_.push_back(model.add_var("P_u" + std::to_string(u), VarKind::Continuous,
                                 0.0, nb_.units[u].out_hi));
    for (int u = 0; u < U; ++u)
      pb_.push_back(model.add_var("Pb_u" + std::to_string(u), VarKind::Binary,
                                  0.0, live(u) ? 1.0 : 0.0));
    pi_.assign(static_cast<std::size_t>(U) * n_, -1);
    for (int u = 0; u < U; ++u) {
      if (!live(u)) continue;
      for (int i = 1; i <= n_; ++i)
        pi_[static_cast<std::size_t>(u) * n_ + i - 1] = model.add_var(
            "Pi_" + std::to_string(i) + "_u" + std::to_string(u),
            VarKind::Binary, 0.0, 1.0);
    }
    for (std::size_t j = 0; j < inst_.reward.abs_terms.size(); ++j)
      z_.push_back(model.add_var("Z_r" + std::to_string(j), VarKind::Continuous,
                                 0.0, abs_ceiling(inst_.reward.abs_terms[j])));

    // Global constraints on the current state and action.
    for (std::size_t c = 0; c < inst_.constraints.size(); ++c) {
      const StepConstraint& con = inst_.constraints[c];
      std::vector<std::pair<int, double>> row;
      for (int s = 0; s < inst_.num_states(); ++s)
        if (con.state_coeffs[s] != 0.0)
          row.emplace_back(y_t_[s], con.state_coeffs[s]);
      for (int a = 0; a < inst_.num_actions(); ++a)
        if (con.action_coeffs[a] != 0.0)
          row.emplace_back(x_[a], con.action_coeffs[a]);
      model.add_constraint("C" + std::to_string(c), std::move(row), con.sense,
                           con.rhs);
    }

    // Network rows.
    const auto add_in = [&](std::vector<std::pair<int, double>>& row,
                            const UnitInputs& in, double scale) {
      for (const auto& [s, w] : in.states) row.emplace_back(y_t_[s], scale * w);
      for (const auto& [a, w] : in.actions) row.emplace_back(x_[a], scale * w);
      for (const auto& [u2, w] : in.hidden)
        row.emplace_back(p_[u2], scale * w);
    };
    for (int u = 0; u < U; ++u) {
      const UnitInputs in = net_.hidden_unit_inputs(u);
      const double mu = nb_.units[u].big_m;
      model.add_constraint("Act_u" + std::to_string(u),
                           {{p_[u], 1.0}, {pb_[u], -mu}},
                           ConstraintSense::LessEqual, 0.0);
      std::vector<std::pair<int, double>> deact{{p_[u], 1.0}, {pb_[u], mu}};
      add_in(deact, in, -1.0);
      model.add_constraint("Deact_u" + std::to_string(u), std::move(deact),
                           ConstraintSense::LessEqual, mu + in.bias);
      std::vector<std::pair<int, double>> pass{{p_[u], 1.0}};
      add_in(pass, in, -1.0);
      model.add_constraint("Pass_u" + std::to_string(u), std::move(pass),
                           ConstraintSense::GreaterEqual, in.bias);
    }
    for (int s = 0; s < inst_.num_states(); ++s) {
      const UnitInputs in = net_.output_unit_inputs(state_to_output[s]);
      std::vector<std::pair<int, double>> row{{y_next_[s], 1.0}};
      add_in(row, in, -1.0);
      model.add_constraint("Out_s" + std::to_string(s), std::move(row),
                           ConstraintSense::Equal, in.bias);
    }

    // Interval linking for live units.
    for (int u = 0; u < U; ++u) {
      if (!live(u)) continue;
      const double nu = nb_.units[u].out_hi;
      std::vector<std::pair<int, double>> link;
      for (int i = 1; i <= n_; ++i) link.emplace_back(pi(i, u), 1.0);
      link.emplace_back(pb_[u], -1.0);
      model.add_constraint("Link_u" + std::to_string(u), std::move(link),
                           ConstraintSense::Equal, 0.0);
      for (int i = 1; i <= n_; ++i) {
        if (i > 1)
          model.add_constraint(
              "IntLo_" + std::to_string(i) + "_u" + std::to_string(u),
              {{pi(i, u), nu * (i - 1) / n_}, {p_[u], -1.0}},
              ConstraintSense::LessEqual, 0.0);
        if (i < n_)
          model.add_constraint(
              "IntHi_" + std::to_string(i) + "_u" + std::to_string(u),
              {{p_[u], 1.0}, {pi(i, u), nu - nu * static_cast<double>(i) / n_}},
              ConstraintSense::LessEqual, nu);
      }
    }

    // Reward linearization over the produced next state.
    for (std::size_t j = 0; j < inst_.reward.abs_terms.size(); ++j) {
      const AbsTerm& term = inst_.reward.abs_terms[j];
      std::vector<std::pair<int, double>> pos, neg;
      for (int s = 0; s < inst_.num_states(); ++s)
        if (term.next_state_coeffs[s] != 0.0) {
          pos.emplace_back(y_next_[s], term.next_state_coeffs[s]);
          neg.emplace_back(y_next_[s], -term.next_state_coeffs[s]);
        }
      for (int a = 0; a < inst_.num_actions(); ++a)
        if (term.action_coeffs[a] != 0.0) {
          pos.emplace_back(x_[a], term.action_coeffs[a]);
          neg.emplace_back(x_[a], -term.action_coeffs[a]);
        }
      pos.emplace_back(z_[j], -1.0);
      neg.emplace_back(z_[j], -1.0);
      model.add_constraint("Zp_r" + std::to_string(j), std::move(pos),
                           ConstraintSense::LessEqual, term.target);
      model.add_constraint("Zn_r" + std::to_string(j), std::move(neg),
                           ConstraintSense::LessEqual, -term.target);
    }
  }

  // Bound on |expression| with the next state ranging over the network's
  // reachable output box.
  double abs_ceiling(const AbsTerm& term) const {
    std::vector<int> state_to_output(inst_.num_states(), -1);
    for (int o = 0; o < net_.output_width(); ++o)
      state_to_output[net_.output_states()[o]] = o;
    double lo = -term.target, hi = -term.target;
    for (int s = 0; s < inst_.num_states(); ++s) {
      const double c = term.next_state_coeffs[s];
      const Interval out = nb_.outputs[state_to_output[s]];
      lo += std::min(c * out.lo, c * out.hi);
      hi += std::max(c * out.lo, c * out.hi);
    }
    for (int a = 0; a < inst_.num_actions(); ++a) {
      const double c = term.action_coeffs[a];
      lo += std::min(c * inst_.action_vars[a].lo, c * inst_.action_vars[a].hi);
      hi += std::max(c * inst_.action_vars[a].lo, c * inst_.action_vars[a].hi);
    }
    return std::max({std::abs(lo), std::abs(hi), 0.0});
  }
};

double pattern_potential(const RewardPotentials& pot,
                         const std::vector<char>& live,
                         const std::vector<int>& pattern) {
  double sum = 0.0;
  for (std::size_t u = 0; u < live.size(); ++u) {
    if (live[u] && pattern[u] > 0)
      sum += pot.units[u].v_on[pattern[u] - 1];
    else
      sum += pot.units[u].v_off;
  }
  return sum;
}

std::vector<char> live_mask(const NetworkBounds& bounds) {
  std::vector<char> live(bounds.units.size(), 0);
  for (std::size_t u = 0; u < bounds.units.size(); ++u)
    live[u] = bounds.units[u].dead() ? 0 : 1;
  return live;
}

// Reward range over the domains by interval arithmetic; used to size the
// a-priori box on potential values.
Interval reward_range(const PlanningInstance& inst,
                      const NetworkBounds& bounds, const NeuralNet* net) {
  Interval r{inst.reward.constant, inst.reward.constant};
  for (int s = 0; s < inst.num_states(); ++s) {
    const double c = inst.reward.next_state_coeffs[s];
    double lo = inst.state_vars[s].lo, hi = inst.state_vars[s].hi;
    if (net) {
      std::vector<int> s2o(inst.num_states(), -1);
      for (int o = 0; o < net->output_width(); ++o)
        s2o[net->output_states()[o]] = o;
      lo = std::min(lo, bounds.outputs[s2o[s]].lo);
      hi = std::max(hi, bounds.outputs[s2o[s]].hi);
    }
    r.lo += std::min(c * lo, c * hi);
    r.hi += std::max(c * lo, c * hi);
  }
  for (int a = 0; a < inst.num_actions(); ++a) {
    const double c = inst.reward.action_coeffs[a];
    r.lo += std::min(c * inst.action_vars[a].lo, c * inst.action_vars[a].hi);
    r.hi += std::max(c * inst.action_vars[a].lo, c * inst.action_vars[a].hi);
  }
  for (const AbsTerm& term : inst.reward.abs_terms) {
    double m = std::abs(term.target);
    for (int s = 0; s < inst.num_states(); ++s)
      m += std::abs(term.next_state_coeffs[s]) *
           std::max(std::abs(inst.state_vars[s].lo),
                    std::abs(inst.state_vars[s].hi));
    for (int a = 0; a < inst.num_actions(); ++a)
      m += std::abs(term.action_coeffs[a]) *
           std::max(std::abs(inst.action_vars[a].lo),
                    std::abs(inst.action_vars[a].hi));
    r.lo -= term.weight * m;
  }
  return r;
}

double max_reward_coefficient(const PlanningInstance& inst) {
  double m = std::abs(inst.reward.constant);
  for (double c : inst.reward.next_state_coeffs) m = std::max(m, std::abs(c));
  for (double c : inst.reward.action_coeffs) m = std::max(m, std::abs(c));
  for (const AbsTerm& t : inst.reward.abs_terms) {
    m = std::max({m, t.weight, std::abs(t.target)});
    for (double c : t.next_state_coeffs) m = std::max(m, std::abs(c));
    for (double c : t.action_coeffs) m = std::max(m, std::abs(c));
  }
  return m;
}

SubproblemResult run_subproblem(OneStepModel& osm, int num_states,
                                int num_actions,
                                const RewardPotentials& candidate,
                                const std::vector<char>& live,
                                const MilpParams& params) {
  osm.set_objective(&candidate);
  const MilpResult res = solve_milp(osm.model, params);
  if (res.status == SolveStatus::Infeasible)
    throw Error("subproblem: learned planning problem is infeasible");
  if (res.status == SolveStatus::Unbounded)
    throw Error("subproblem: unbounded (variable domains must be bounded)");
  if (res.status != SolveStatus::Optimal)
    throw NumericError("subproblem: solver hit a limit before optimality");

  SubproblemResult out;
  out.pattern = osm.extract_pattern(res.values);
  out.violation = res.objective;
  out.r_star = res.objective + pattern_potential(candidate, live, out.pattern);
  for (int s = 0; s < num_states; ++s) {
    out.witness_state.push_back(res.values[osm.y_t(s)]);
    out.witness_next.push_back(res.values[osm.y_next(s)]);
  }
  for (int a = 0; a < num_actions; ++a)
    out.witness_action.push_back(res.values[osm.x(a)]);
  return out;
}

}  // namespace

double default_lambda(const NetworkBounds& bounds) {
  const double m = bounds.max_big_m;
  return m > 0.0 ? 1.0 / std::sqrt(m) : 1.0;
}

MasterSetup MasterSetup::from(const PlanningInstance& instance,
                              const NetworkBounds& bounds, int intervals,
                              double lambda) {
  MasterSetup setup;
  setup.intervals = intervals;
  setup.lambda = lambda < 0.0 ? default_lambda(bounds) : lambda;
  setup.live = live_mask(bounds);

  double sum_m = 0.0;
  for (const UnitBounds& ub : bounds.units) sum_m += ub.big_m;
  const double ncoef = max_reward_coefficient(instance);
  const Interval rr = reward_range(instance, bounds, nullptr);
  const double formula =
      sum_m * ncoef * (static_cast<double>(bounds.units.size()) + 1.0);
  setup.var_bound =
      std::max({formula, std::abs(rr.lo), std::abs(rr.hi), 1.0}) + 1.0;
  return setup;
}

SubproblemResult solve_subproblem(const NeuralNet& net,
                                  const PlanningInstance& instance,
                                  const NetworkBounds& bounds,
                                  const RewardPotentials& candidate,
                                  const MilpParams& params) {
  if (candidate.num_units() != net.num_hidden_units())
    throw Error("subproblem: candidate potentials do not match the network");
  OneStepModel osm(net, instance, bounds, candidate.intervals);
  MilpParams p = params;
  p.gap_tol = std::min(p.gap_tol, 1e-9);
  return run_subproblem(osm, instance.num_states(), instance.num_actions(),
                        candidate, live_mask(bounds), p);
}

MasterResult solve_master(const MasterSetup& setup,
                          const std::vector<CgIteration>& cuts) {
  const int U = static_cast<int>(setup.live.size());
  const int N = setup.intervals;

  if (U == 0) {
    for (const CgIteration& cut : cuts)
      if (cut.r_star > 1e-12)
        throw Error(
            "master: degenerate instance (no hidden units, but the reward "
            "bound requires " +
            std::to_string(cut.r_star) + " > 0)");
    MasterResult res;
    res.potentials.intervals = N;
    res.potentials.lambda = setup.lambda;
    return res;
  }

  Model m;
  m.objective_sense = ObjectiveSense::Minimize;
  std::vector<int> voff(U, -1);
  std::vector<std::vector<int>> von(U);
  for (int u = 0; u < U; ++u) {
    voff[u] = m.add_var("voff_u" + std::to_string(u), VarKind::Continuous,
                        -setup.var_bound, setup.var_bound);
    m.obj_linear[voff[u]] = 1.0;
    m.obj_quad[voff[u]] = setup.lambda;
    if (!setup.live[u]) continue;
    von[u].resize(N);
    for (int i = 1; i <= N; ++i) {
      von[u][i - 1] =
          m.add_var("von_" + std::to_string(i) + "_u" + std::to_string(u),
                    VarKind::Continuous, -setup.var_bound, setup.var_bound);
      m.obj_linear[von[u][i - 1]] = 1.0;
      m.obj_quad[von[u][i - 1]] = setup.lambda;
    }
  }
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    std::vector<std::pair<int, double>> row;
    for (int u = 0; u < U; ++u) {
      if (setup.live[u] && cuts[k].pattern[u] > 0)
        row.emplace_back(von[u][cuts[k].pattern[u] - 1], 1.0);
      else
        row.emplace_back(voff[u], 1.0);
    }
    m.add_constraint("cut" + std::to_string(k), std::move(row),
                     ConstraintSense::GreaterEqual, cuts[k].r_star);
  }

  const LpSolution sol = setup.lambda > 0.0 ? solve_qp(m) : solve_lp(m);
  if (sol.status != SolveStatus::Optimal)
    throw NumericError("master: expected an optimal solution, got " +
                       to_string(sol.status));

  MasterResult res;
  res.objective = sol.objective;
  res.potentials.intervals = N;
  res.potentials.lambda = setup.lambda;
  res.potentials.units.resize(U);
  for (int u = 0; u < U; ++u) {
    res.potentials.units[u].v_off = sol.values[voff[u]];
    res.potentials.units[u].v_on.assign(N, 0.0);
    if (setup.live[u])
      for (int i = 0; i < N; ++i)
        res.potentials.units[u].v_on[i] = sol.values[von[u][i]];
  }
  return res;
}

std::pair<RewardPotentials, CgTrace> compute_potentials(
    const NeuralNet& net, const PlanningInstance& instance,
    const NetworkBounds& bounds, const PotentialsConfig& config) {
  if (config.epsilon <= 0.0) throw Error("potentials: epsilon must be > 0");
  MasterSetup setup =
      MasterSetup::from(instance, bounds, config.intervals, config.lambda);
  const std::vector<char> live = live_mask(bounds);
  int live_count = 0;
  for (char c : live) live_count += c;

  std::int64_t guard = config.max_iterations;
  if (guard <= 0) {
    const double patterns =
        std::pow(config.intervals + 1.0, static_cast<double>(live_count));
    guard = patterns + 1.0 > 1e6 ? 1000000 : static_cast<std::int64_t>(patterns) + 1;
  }

  OneStepModel osm(net, instance, bounds, config.intervals);
  MilpParams sub_params = config.subproblem_params;
  sub_params.gap_tol = std::min(sub_params.gap_tol, 1e-9);

  CgTrace trace;
  std::vector<CgIteration> cuts;
  const auto start = Clock::now();

  for (int k = 1; k <= guard; ++k) {
    const MasterResult master = solve_master(setup, cuts);
    SubproblemResult sub =
        run_subproblem(osm, instance.num_states(), instance.num_actions(),
                       master.potentials, live, sub_params);

    CgIteration iter;
    iter.k = k;
    iter.pattern = sub.pattern;
    iter.r_star = sub.r_star;
    iter.violation = sub.violation;
    iter.master_objective = master.objective;
    iter.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
    trace.iterations.push_back(iter);

    if (sub.violation <= config.epsilon) {
      RewardPotentials pot = master.potentials;
      pot.epsilon = config.epsilon;
      pot.certified_violation = sub.violation;
      return {std::move(pot), std::move(trace)};
    }
    cuts.push_back(std::move(iter));
  }
  throw NumericError(
      "potentials: constraint generation exceeded its iteration guard (" +
      std::to_string(guard) + "); finite termination indicates a tolerance "
      "problem in the solvers");
}

MasterResult oracle_enumerate(const NeuralNet& net,
                              const PlanningInstance& instance,
                              const NetworkBounds& bounds, int intervals,
                              double lambda) {
  const std::vector<char> live = live_mask(bounds);
  int live_count = 0;
  for (char c : live) live_count += c;
  const double total =
      std::pow(intervals + 1.0, static_cast<double>(live_count));
  if (total > 1e5)
    throw Error("oracle_enumerate: " + std::to_string(total) +
                " patterns exceed the desk-scale guard of 1e5");

  OneStepModel osm(net, instance, bounds, intervals);
  osm.set_objective(nullptr);  // plain reward; potentials are constant per pattern

  std::vector<int> live_ids;
  for (std::size_t u = 0; u < live.size(); ++u)
    if (live[u]) live_ids.push_back(static_cast<int>(u));

  std::vector<CgIteration> cuts;
  std::vector<int> odometer(live_ids.size(), 0);
  const int U = net.num_hidden_units();
  for (;;) {
    std::vector<int> pattern(U, 0);
    for (std::size_t j = 0; j < live_ids.size(); ++j)
      pattern[live_ids[j]] = odometer[j];
    osm.fix_pattern(pattern);
    const LpSolution lp = solve_lp(osm.model);
    if (lp.status == SolveStatus::Optimal) {
      CgIteration cut;
      cut.k = static_cast<int>(cuts.size()) + 1;
      cut.pattern = pattern;
      cut.r_star = lp.objective;
      cuts.push_back(std::move(cut));
    }
    // Advance the odometer.
    std::size_t j = 0;
    for (; j < odometer.size(); ++j) {
      if (odometer[j] < intervals) {
        ++odometer[j];
        break;
      }
      odometer[j] = 0;
    }
    if (j == odometer.size()) break;
  }
  osm.unfix_pattern();

  MasterSetup setup = MasterSetup::from(instance, bounds, intervals, lambda);
  return solve_master(setup, cuts);
}

double certificate_slack(const RewardPotentials& pot,
                         const std::vector<UnitBounds>& units,
                         std::span<const double> unit_pre, double reward,
                         double boundary_tol) {
  const int N = pot.intervals;
  double sum = 0.0;
  for (std::size_t u = 0; u < units.size(); ++u) {
    const UnitPotentials& up = pot.units[u];
    if (units[u].dead()) {
      sum += up.v_off;
      continue;
    }
    const double pre = unit_pre[u];
    if (pre < -boundary_tol) {
      sum += up.v_off;
      continue;
    }
    const double nu = units[u].out_hi;
    const double value = std::max(pre, 0.0);
    double best = pre <= boundary_tol ? up.v_off : kInf;
    for (int i = 1; i <= N; ++i) {
      const double lo = nu * (i - 1) / N;
      const double hi = nu * i / N;
      if (value >= lo - boundary_tol && value <= hi + boundary_tol)
        best = std::min(best, up.v_on[i - 1]);
    }
    sum += best;
  }
  return sum - reward;
}

std::string CgTrace::csv() const {
  std::ostringstream out;
  out.precision(12);
  out << "k,violation,master_obj,elapsed\n";
  for (const CgIteration& it : iterations)
    out << it.k << ',' << it.violation << ',' << it.master_objective << ','
        << it.elapsed_s << '\n';
  return out.str();
}

}  // namespace reluplan
