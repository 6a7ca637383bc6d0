// SPDX-License-Identifier: Apache-2.0

#include "reluplan/qp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "reluplan/errors.hpp"

namespace reluplan {

namespace {

// Solves A z = rhs in place by LU with partial pivoting. Returns false on a
// (near-)singular matrix.
bool lu_solve(std::vector<double>& a, std::vector<double>& rhs, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double mag = std::abs(a[k * n + k]);
    for (int i = k + 1; i < n; ++i) {
      const double m = std::abs(a[i * n + k]);
      if (m > mag) {
        mag = m;
        piv = i;
      }
    }
    if (mag < 1e-12) return false;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      std::swap(rhs[k], rhs[piv]);
    }
    const double inv = 1.0 / a[k * n + k];
    for (int i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] * inv;
      if (f == 0.0) continue;
      a[i * n + k] = 0.0;
      for (int j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      rhs[i] -= f * rhs[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = rhs[i];
    for (int j = i + 1; j < n; ++j) s -= a[i * n + j] * rhs[j];
    rhs[i] = s / a[i * n + i];
  }
  return true;
}

// One row of the normalized constraint system a.x >= b (equalities kept
// apart and always active).
struct Row {
  std::vector<std::pair<int, double>> coeffs;
  double b = 0.0;
  bool equality = false;
};

double row_dot(const Row& r, const std::vector<double>& x) {
  double s = 0.0;
  for (const auto& [j, a] : r.coeffs) s += a * x[j];
  return s;
}

}  // namespace

LpSolution solve_qp(const Model& model, const QpOptions& opts) {
  model.validate();
  if (model.objective_sense != ObjectiveSense::Minimize)
    throw Error("solve_qp: only minimization is supported");
  for (double q : model.obj_quad)
    if (q < 0.0) throw Error("solve_qp: negative quadratic coefficient (non-convex)");
  if (!model.has_quadratic()) return solve_lp(model, opts.lp_opts);

  const int n = model.num_vars();

  // Feasible start: vertex of the constraint set from a zero-objective LP.
  Model feas = model;
  std::fill(feas.obj_linear.begin(), feas.obj_linear.end(), 0.0);
  std::fill(feas.obj_quad.begin(), feas.obj_quad.end(), 0.0);
  LpSolution start = solve_lp(feas, opts.lp_opts);
  if (start.status != SolveStatus::Optimal) {
    LpSolution out;
    out.status = start.status;
    return out;
  }
  std::vector<double> x = std::move(start.values);

  // Normalize rows and bounds to a.x >= b.
  std::vector<Row> rows;
  for (const auto& c : model.cons) {
    Row r;
    r.coeffs = c.coeffs;
    r.b = c.rhs;
    if (c.sense == ConstraintSense::Equal) {
      r.equality = true;
    } else if (c.sense == ConstraintSense::LessEqual) {
      for (auto& [j, a] : r.coeffs) a = -a;
      r.b = -r.b;
    }
    rows.push_back(std::move(r));
  }
  for (int j = 0; j < n; ++j) {
    if (model.vars[j].lo == model.vars[j].hi && std::isfinite(model.vars[j].lo)) {
      Row r;
      r.coeffs = {{j, 1.0}};
      r.b = model.vars[j].lo;
      r.equality = true;
      rows.push_back(std::move(r));
      continue;
    }
    if (std::isfinite(model.vars[j].lo)) {
      Row r;
      r.coeffs = {{j, 1.0}};
      r.b = model.vars[j].lo;
      rows.push_back(std::move(r));
    }
    if (std::isfinite(model.vars[j].hi)) {
      Row r;
      r.coeffs = {{j, -1.0}};
      r.b = -model.vars[j].hi;
      rows.push_back(std::move(r));
    }
  }
  const int nrows = static_cast<int>(rows.size());

  std::vector<char> in_w(nrows, 0);
  for (int i = 0; i < nrows; ++i) in_w[i] = rows[i].equality ? 1 : 0;

  const auto grad = [&](const std::vector<double>& p) {
    std::vector<double> g(n);
    for (int j = 0; j < n; ++j)
      g[j] = model.obj_linear[j] + 2.0 * model.obj_quad[j] * p[j];
    return g;
  };

  const int cap = opts.max_iters > 0 ? opts.max_iters : 100 + 20 * (n + nrows);
  std::vector<double> multipliers(nrows, 0.0);

  for (int it = 0; it < cap; ++it) {
    std::vector<int> active;
    for (int i = 0; i < nrows; ++i)
      if (in_w[i]) active.push_back(i);
    const int k = static_cast<int>(active.size());

    // KKT system for the equality-constrained subproblem.
    const int dim = n + k;
    std::vector<double> kkt(static_cast<std::size_t>(dim) * dim, 0.0);
    std::vector<double> rhs(dim, 0.0);
    for (int j = 0; j < n; ++j) {
      kkt[j * dim + j] = 2.0 * model.obj_quad[j];
      rhs[j] = -model.obj_linear[j];
    }
    for (int r = 0; r < k; ++r) {
      for (const auto& [j, a] : rows[active[r]].coeffs) {
        kkt[j * dim + (n + r)] = a;
        kkt[(n + r) * dim + j] = a;
      }
      rhs[n + r] = rows[active[r]].b;
    }
    if (!lu_solve(kkt, rhs, dim))
      throw NumericError("solve_qp: singular KKT system");

    std::vector<double> target(rhs.begin(), rhs.begin() + n);
    double move = 0.0;
    for (int j = 0; j < n; ++j) move = std::max(move, std::abs(target[j] - x[j]));

    if (move <= 1e-11) {
      // Stationary on the working set: check inequality multipliers.
      int worst = -1;
      double worst_val = -1e-9;
      for (int r = 0; r < k; ++r) {
        const int i = active[r];
        if (rows[i].equality) continue;
        const double lambda = -rhs[n + r];
        if (lambda < worst_val) {
          worst_val = lambda;
          worst = i;
        }
      }
      if (worst < 0) {
        LpSolution out;
        out.status = SolveStatus::Optimal;
        out.values = x;
        out.objective = model.objective_value(x);
        // Stationarity residual, as a guard against silent breakdowns.
        std::vector<double> g = grad(x);
        for (int r = 0; r < k; ++r)
          for (const auto& [j, a] : rows[active[r]].coeffs)
            g[j] += a * rhs[n + r];
        double res = 0.0;
        for (int j = 0; j < n; ++j) res = std::max(res, std::abs(g[j]));
        if (res > 100 * opts.kkt_tol)
          throw NumericError("solve_qp: KKT residual too large");
        return out;
      }
      in_w[worst] = 0;
      continue;
    }

    // Step toward the subproblem optimum; stop at the first blocker.
    double alpha = 1.0;
    int blocker = -1;
    for (int i = 0; i < nrows; ++i) {
      if (in_w[i]) continue;
      double ap = 0.0;
      for (const auto& [j, a] : rows[i].coeffs) ap += a * (target[j] - x[j]);
      if (ap >= -opts.tie_tol) continue;
      const double slack = row_dot(rows[i], x) - rows[i].b;
      const double ai = std::max(slack, 0.0) / (-ap);
      if (ai < alpha - opts.tie_tol) {
        alpha = ai;
        blocker = i;
      }
    }
    for (int j = 0; j < n; ++j) x[j] += alpha * (target[j] - x[j]);
    if (blocker >= 0) in_w[blocker] = 1;
  }
  throw NumericError("solve_qp: active-set iteration limit");
}

}  // namespace reluplan
