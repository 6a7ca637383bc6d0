// SPDX-License-Identifier: Apache-2.0

#include "reluplan/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <vector>

#include "reluplan/errors.hpp"

namespace reluplan {

namespace {

using Clock = std::chrono::steady_clock;

struct Node {
  std::int64_t id = 0;
  double bound = 0.0;                          // LP bound (sense-adjusted max)
  std::vector<std::pair<int, int>> fixings;    // (binary var id, 0/1)
  std::vector<double> lp_values;
};

struct NodeOrder {
  // Max-heap on bound, then FIFO by id.
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const Model& model, const MilpParams& params,
                 const SimplexOptions& lp_opts)
      : model_(model),
        params_(params),
        lp_opts_(lp_opts),
        maximize_(model.objective_sense == ObjectiveSense::Maximize),
        relax_(model.relaxed()),
        start_(Clock::now()) {
    for (int j = 0; j < model.num_vars(); ++j)
      if (model.vars[j].kind == VarKind::Binary) binaries_.push_back(j);
  }

  MilpResult run() {
    Node root;
    root.id = next_id_++;
    const EvalOutcome out = evaluate(root);
    if (out == EvalOutcome::Unbounded) return finish(SolveStatus::Unbounded);
    if (out == EvalOutcome::Open) open_.push(std::move(root));

    while (!open_.empty()) {
      if (gap_closed()) break;
      if (limit_hit()) return finish(SolveStatus::Limit);

      Node node = open_.top();
      open_.pop();
      record_dual(node.bound);
      if (pruned(node.bound)) continue;

      const int branch_var = pick_branch_var(node.lp_values);
      for (int fix : {0, 1}) {
        Node child;
        child.id = next_id_++;
        child.fixings = node.fixings;
        child.fixings.emplace_back(branch_var, fix);
        if (evaluate(child) == EvalOutcome::Open) open_.push(std::move(child));
      }
    }
    return finish(have_primal_ ? SolveStatus::Optimal : SolveStatus::Infeasible);
  }

 private:
  enum class EvalOutcome { Open, Closed, Unbounded };

  const Model& model_;
  MilpParams params_;
  SimplexOptions lp_opts_;
  bool maximize_;
  Model relax_;
  Clock::time_point start_;

  std::vector<int> binaries_;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open_;
  std::int64_t next_id_ = 0;
  std::int64_t closed_ = 0;

  std::vector<double> incumbent_;
  double primal_ = 0.0;  // sense-adjusted: always a maximization value
  bool have_primal_ = false;
  double last_dual_ = kInf;
  SolveStats stats_;

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  bool limit_hit() const {
    if (params_.node_limit > 0 && closed_ >= params_.node_limit) return true;
    if (std::isfinite(params_.time_limit_s) && elapsed() >= params_.time_limit_s)
      return true;
    return false;
  }

  // Objective in "maximization" space so that bounds compare uniformly.
  double adjusted(double obj) const { return maximize_ ? obj : -obj; }

  bool pruned(double bound) const {
    return have_primal_ && bound <= primal_ + 1e-9;
  }

  bool gap_closed() const {
    return have_primal_ && !open_.empty() &&
           open_.top().bound - primal_ <=
               params_.gap_tol * std::max(1.0, std::abs(primal_));
  }

  bool integral(const std::vector<double>& x) const {
    for (int j : binaries_) {
      const double f = x[j] - std::floor(x[j]);
      if (std::min(f, 1.0 - f) > params_.int_tol) return false;
    }
    return true;
  }

  EvalOutcome evaluate(Node& node) {
    for (const auto& [j, v] : node.fixings) {
      relax_.vars[j].lo = v;
      relax_.vars[j].hi = v;
    }
    LpSolution lp = solve_lp(relax_, lp_opts_);
    for (const auto& [j, _] : node.fixings) {
      relax_.vars[j].lo = model_.vars[j].lo;
      relax_.vars[j].hi = model_.vars[j].hi;
    }

    ++closed_;
    if (lp.status == SolveStatus::Unbounded) return EvalOutcome::Unbounded;
    if (lp.status != SolveStatus::Optimal) return EvalOutcome::Closed;

    node.bound = adjusted(lp.objective);
    if (node.id == 0) record_dual(node.bound);
    if (pruned(node.bound)) return EvalOutcome::Closed;
    if (integral(lp.values)) {
      if (!have_primal_ || node.bound > primal_) {
        have_primal_ = true;
        primal_ = node.bound;
        incumbent_ = lp.values;
        sample_timeline();
      }
      return EvalOutcome::Closed;
    }
    node.lp_values = std::move(lp.values);
    return EvalOutcome::Open;
  }

  int pick_branch_var(const std::vector<double>& x) const {
    int best = -1;
    double best_frac = -1.0;
    for (int j : binaries_) {
      const double f = x[j] - std::floor(x[j]);
      const double dist = std::min(f, 1.0 - f);
      if (dist > params_.int_tol && dist > best_frac + 1e-12) {
        best_frac = dist;
        best = j;
      }
    }
    return best;
  }

  double global_dual() const {
    // The optimum is either the incumbent or inside some open subtree.
    double d = have_primal_ ? primal_ : -kInf;
    if (!open_.empty()) d = std::max(d, open_.top().bound);
    return d;
  }

  void record_dual(double processing_bound) {
    const double dual = std::max(processing_bound, global_dual());
    if (dual < last_dual_ - 1e-12) {
      last_dual_ = dual;
      sample_timeline();
    }
  }

  void sample_timeline() {
    TimelinePoint p;
    p.elapsed = elapsed();
    const double dual = std::min(last_dual_, kInf);
    p.dual = maximize_ ? dual : -dual;
    if (have_primal_) p.primal = maximize_ ? primal_ : -primal_;
    p.nodes_open = static_cast<std::int64_t>(open_.size());
    p.nodes_closed = closed_;
    stats_.timeline.push_back(p);
  }

  MilpResult finish(SolveStatus status) {
    MilpResult res;
    // A limit run that already proved the gap counts as optimal.
    double dual = global_dual();
    if (status == SolveStatus::Limit && have_primal_ &&
        dual - primal_ <= params_.gap_tol * std::max(1.0, std::abs(primal_)))
      status = SolveStatus::Optimal;

    res.status = status;
    if (have_primal_) {
      res.values = incumbent_;
      res.objective = maximize_ ? primal_ : -primal_;
      res.stats.primal = res.objective;
    }
    res.stats.status = status;
    res.stats.nodes_open = static_cast<std::int64_t>(open_.size());
    res.stats.nodes_closed = closed_;
    res.stats.solve_seconds = elapsed();
    if (!std::isfinite(dual)) dual = maximize_ ? kInf : -kInf;
    res.stats.dual = maximize_ ? dual : -dual;
    res.stats.timeline = std::move(stats_.timeline);
    {
      TimelinePoint p;
      p.elapsed = res.stats.solve_seconds;
      p.dual = res.stats.dual;
      p.primal = res.stats.primal;
      p.nodes_open = res.stats.nodes_open;
      p.nodes_closed = res.stats.nodes_closed;
      res.stats.timeline.push_back(p);
    }
    return res;
  }
};

}  // namespace

MilpResult solve_milp(const Model& model, const MilpParams& params,
                      const SimplexOptions& lp_opts) {
  if (model.has_quadratic())
    throw Error("solve_milp: model has a quadratic objective");
  model.validate();
  BranchAndBound bnb(model, params, lp_opts);
  return bnb.run();
}

}  // namespace reluplan
