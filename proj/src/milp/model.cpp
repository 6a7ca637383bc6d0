// SPDX-License-Identifier: Apache-2.0

#include "reluplan/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "reluplan/errors.hpp"

namespace reluplan {

int Model::add_var(std::string name, VarKind kind, double lo, double hi) {
  vars.push_back(Variable{std::move(name), kind, lo, hi});
  obj_linear.push_back(0.0);
  obj_quad.push_back(0.0);
  return static_cast<int>(vars.size()) - 1;
}

int Model::add_constraint(std::string name,
                          std::vector<std::pair<int, double>> coeffs,
                          ConstraintSense sense, double rhs) {
  cons.push_back(LinearConstraint{std::move(name), std::move(coeffs), sense, rhs});
  return static_cast<int>(cons.size()) - 1;
}

void Model::set_obj_linear(int var, double coeff) { obj_linear.at(var) = coeff; }
void Model::set_obj_quad(int var, double coeff) { obj_quad.at(var) = coeff; }

int Model::num_binaries() const {
  int n = 0;
  for (const auto& v : vars) n += v.kind == VarKind::Binary ? 1 : 0;
  return n;
}

bool Model::has_quadratic() const {
  return std::any_of(obj_quad.begin(), obj_quad.end(),
                     [](double q) { return q != 0.0; });
}

double Model::objective_value(const std::vector<double>& x) const {
  double v = obj_constant;
  for (int j = 0; j < num_vars(); ++j) {
    v += obj_linear[j] * x[j];
    if (obj_quad[j] != 0.0) v += obj_quad[j] * x[j] * x[j];
  }
  return v;
}

double Model::max_infeasibility(const std::vector<double>& x) const {
  double worst = 0.0;
  for (int j = 0; j < num_vars(); ++j) {
    worst = std::max(worst, vars[j].lo - x[j]);
    worst = std::max(worst, x[j] - vars[j].hi);
  }
  for (const auto& c : cons) {
    double lhs = 0.0;
    for (const auto& [j, a] : c.coeffs) lhs += a * x[j];
    switch (c.sense) {
      case ConstraintSense::LessEqual:
        worst = std::max(worst, lhs - c.rhs);
        break;
      case ConstraintSense::GreaterEqual:
        worst = std::max(worst, c.rhs - lhs);
        break;
      case ConstraintSense::Equal:
        worst = std::max(worst, std::abs(lhs - c.rhs));
        break;
    }
  }
  return worst;
}

void Model::validate() const {
  const int n = num_vars();
  if (static_cast<int>(obj_linear.size()) != n ||
      static_cast<int>(obj_quad.size()) != n)
    throw Error("model: objective vectors out of sync with variables");
  for (int j = 0; j < n; ++j) {
    const auto& v = vars[j];
    if (std::isnan(v.lo) || std::isnan(v.hi) || v.lo > v.hi)
      throw Error("model: bad bounds on variable " + v.name);
    if (v.kind == VarKind::Binary && (v.lo < 0.0 || v.hi > 1.0))
      throw Error("model: binary variable " + v.name +
                  " has bounds outside [0,1]");
    if (!std::isfinite(obj_linear[j]) || !std::isfinite(obj_quad[j]))
      throw Error("model: non-finite objective coefficient on " + v.name);
  }
  for (const auto& c : cons) {
    if (!std::isfinite(c.rhs))
      throw Error("model: non-finite rhs in constraint " + c.name);
    for (const auto& [j, a] : c.coeffs) {
      if (j < 0 || j >= n)
        throw Error("model: constraint " + c.name +
                    " references undeclared variable id " + std::to_string(j));
      if (!std::isfinite(a))
        throw Error("model: non-finite coefficient in constraint " + c.name);
    }
  }
}

Model Model::relaxed() const {
  Model m = *this;
  for (auto& v : m.vars) v.kind = VarKind::Continuous;
  return m;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Feasible:
      return "feasible";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::Unbounded:
      return "unbounded";
    case SolveStatus::Limit:
      return "limit";
  }
  return "?";
}

std::string SolveStats::timeline_csv() const {
  std::ostringstream out;
  out.precision(12);
  out << "t,dual,primal,open,closed\n";
  for (const auto& p : timeline) {
    out << p.elapsed << ',' << p.dual << ',';
    if (p.primal) out << *p.primal;
    out << ',' << p.nodes_open << ',' << p.nodes_closed << '\n';
  }
  return out.str();
}

}  // namespace reluplan
