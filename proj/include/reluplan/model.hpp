// SPDX-License-Identifier: Apache-2.0
//
// Abstract optimization model: continuous/binary variables, sparse linear
// constraints, and a linear or diagonal-quadratic objective. Consumed by
// the simplex, branch-and-bound and QP solvers and by the LP-file writer.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace reluplan {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Binary };
enum class ConstraintSense { LessEqual, Equal, GreaterEqual };
enum class ObjectiveSense { Minimize, Maximize };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lo = -kInf;
  double hi = kInf;
};

struct LinearConstraint {
  std::string name;
  std::vector<std::pair<int, double>> coeffs;  // (variable id, coefficient)
  ConstraintSense sense = ConstraintSense::LessEqual;
  double rhs = 0.0;
};

class Model {
 public:
  ObjectiveSense objective_sense = ObjectiveSense::Minimize;
  std::vector<Variable> vars;
  std::vector<LinearConstraint> cons;
  std::vector<double> obj_linear;  // per variable
  std::vector<double> obj_quad;    // per variable, contributes q * x^2
  double obj_constant = 0.0;

  int add_var(std::string name, VarKind kind, double lo, double hi);
  int add_constraint(std::string name,
                     std::vector<std::pair<int, double>> coeffs,
                     ConstraintSense sense, double rhs);

  void set_obj_linear(int var, double coeff);
  void set_obj_quad(int var, double coeff);

  int num_vars() const { return static_cast<int>(vars.size()); }
  int num_cons() const { return static_cast<int>(cons.size()); }
  int num_binaries() const;
  bool has_quadratic() const;

  /// Objective value of a full assignment, including the constant.
  double objective_value(const std::vector<double>& x) const;

  /// Largest violation of constraints and bounds at `x`.
  double max_infeasibility(const std::vector<double>& x) const;

  /// Throws reluplan::Error if an invariant is broken (binary bounds
  /// outside [0,1], non-finite coefficients, unknown variable ids, ...).
  void validate() const;

  /// Copy with every binary relaxed to a continuous variable in its bounds.
  Model relaxed() const;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Unbounded, Limit };

std::string to_string(SolveStatus s);

struct TimelinePoint {
  double elapsed = 0.0;  // seconds
  double dual = 0.0;
  std::optional<double> primal;
  std::int64_t nodes_open = 0;
  std::int64_t nodes_closed = 0;
};

/// Solver telemetry: incumbent, best bound, node counts and the bound
/// timeline sampled at every incumbent or bound improvement.
struct SolveStats {
  std::optional<double> primal;
  double dual = 0.0;
  std::int64_t nodes_open = 0;
  std::int64_t nodes_closed = 0;
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<TimelinePoint> timeline;
  double solve_seconds = 0.0;

  std::string timeline_csv() const;  // header: t,dual,primal,open,closed
};

struct LpSolution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> values;
  double objective = 0.0;
};

struct MilpResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> values;  // incumbent (empty if none)
  double objective = 0.0;      // incumbent objective (meaningful if primal)
  SolveStats stats;
};

struct MilpParams {
  double time_limit_s = kInf;
  std::int64_t node_limit = 0;  // 0 = unlimited
  double gap_tol = 1e-6;
  double int_tol = 1e-6;
};

}  // namespace reluplan
