// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles and generators. These deliberately avoid the library's
// solve paths: LPs are checked by brute-force vertex enumeration and MILPs
// by enumeration over all binary patterns.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "reluplan/model.hpp"
#include "reluplan/simplex.hpp"

namespace reluplan::testing {

// Portable uniform double in [a, b): uses only the standardized mt19937
// output stream, not the implementation-defined distributions.
inline double uniform(std::mt19937& gen, double a, double b) {
  const double u = gen() * (1.0 / 4294967296.0);
  return a + (b - a) * u;
}

inline int uniform_int(std::mt19937& gen, int lo, int hi) {
  return lo + static_cast<int>(gen() % static_cast<std::uint32_t>(hi - lo + 1));
}

// Gaussian elimination with partial pivoting; false if singular.
inline bool dense_solve(std::vector<double> a, std::vector<double> b, int n,
                        std::vector<double>& out) {
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
    if (std::abs(a[piv * n + k]) < 1e-11) return false;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }
  out.assign(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i * n + j] * out[j];
    out[i] = s / a[i * n + i];
  }
  return true;
}

struct OracleLp {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> argmax;
};

// Exhaustive vertex enumeration. Requires finite bounds on every variable
// (the feasible set is then a polytope and the optimum sits on a vertex).
inline OracleLp lp_by_vertex_enumeration(const Model& model) {
  const int n = model.num_vars();
  struct Plane {
    std::vector<double> a;
    double b;
  };
  std::vector<Plane> planes;
  for (const auto& c : model.cons) {
    Plane p;
    p.a.assign(n, 0.0);
    for (const auto& [j, v] : c.coeffs) p.a[j] += v;
    p.b = c.rhs;
    planes.push_back(std::move(p));
  }
  for (int j = 0; j < n; ++j) {
    Plane lo;
    lo.a.assign(n, 0.0);
    lo.a[j] = 1.0;
    lo.b = model.vars[j].lo;
    planes.push_back(lo);
    Plane hi;
    hi.a.assign(n, 0.0);
    hi.a[j] = 1.0;
    hi.b = model.vars[j].hi;
    planes.push_back(std::move(hi));
  }

  OracleLp res;
  const int h = static_cast<int>(planes.size());
  std::vector<int> idx(n);
  const bool maximize = model.objective_sense == ObjectiveSense::Maximize;

  // Enumerate all n-subsets of planes.
  std::vector<int> comb(n);
  for (int i = 0; i < n; ++i) comb[i] = i;
  if (h < n) return res;
  for (;;) {
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    std::vector<double> b(n);
    for (int r = 0; r < n; ++r) {
      for (int j = 0; j < n; ++j) a[r * n + j] = planes[comb[r]].a[j];
      b[r] = planes[comb[r]].b;
    }
    std::vector<double> x;
    if (dense_solve(a, b, n, x) && model.max_infeasibility(x) <= 1e-9) {
      const double obj = model.objective_value(x);
      if (!res.feasible || (maximize ? obj > res.objective : obj < res.objective)) {
        res.feasible = true;
        res.objective = obj;
        res.argmax = x;
      }
    }
    int i = n - 1;
    while (i >= 0 && comb[i] == h - n + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int k = i + 1; k < n; ++k) comb[k] = comb[k - 1] + 1;
  }
  return res;
}

struct OracleMilp {
  bool feasible = false;
  double objective = 0.0;
};

// Enumerates every binary pattern and solves the per-pattern LP.
inline OracleMilp milp_by_enumeration(const Model& model) {
  std::vector<int> bins;
  for (int j = 0; j < model.num_vars(); ++j)
    if (model.vars[j].kind == VarKind::Binary) bins.push_back(j);
  const int nb = static_cast<int>(bins.size());
  const bool maximize = model.objective_sense == ObjectiveSense::Maximize;

  OracleMilp res;
  Model work = model.relaxed();
  for (std::uint32_t mask = 0; mask < (1u << nb); ++mask) {
    bool in_bounds = true;
    for (int k = 0; k < nb; ++k) {
      const double v = (mask >> k) & 1u;
      const int j = bins[k];
      if (v < model.vars[j].lo - 1e-12 || v > model.vars[j].hi + 1e-12) {
        in_bounds = false;
        break;
      }
      work.vars[j].lo = work.vars[j].hi = v;
    }
    if (!in_bounds) continue;
    LpSolution lp = solve_lp(work);
    if (lp.status == SolveStatus::Optimal) {
      if (!res.feasible ||
          (maximize ? lp.objective > res.objective
                    : lp.objective < res.objective)) {
        res.feasible = true;
        res.objective = lp.objective;
      }
    }
  }
  return res;
}

// Random box-bounded model; with make_binary, a few variables become binary.
inline Model random_model(std::mt19937& gen, int n, int m, int n_binary) {
  Model model;
  model.objective_sense =
      (gen() & 1u) ? ObjectiveSense::Maximize : ObjectiveSense::Minimize;
  for (int j = 0; j < n; ++j) {
    const double lo = uniform(gen, -3.0, 1.0);
    const double hi = lo + uniform(gen, 0.0, 4.0);
    model.add_var("x" + std::to_string(j), VarKind::Continuous, lo, hi);
  }
  for (int k = 0; k < n_binary && k < n; ++k) {
    model.vars[k].kind = VarKind::Binary;
    model.vars[k].lo = 0.0;
    model.vars[k].hi = 1.0;
  }
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<int, double>> coeffs;
    for (int j = 0; j < n; ++j)
      if (gen() % 100 < 70)
        coeffs.emplace_back(j, std::round(uniform(gen, -3.0, 3.0) * 4.0) / 4.0);
    if (coeffs.empty()) coeffs.emplace_back(0, 1.0);
    const int pick = static_cast<int>(gen() % 3);
    const ConstraintSense sense = pick == 0   ? ConstraintSense::LessEqual
                                  : pick == 1 ? ConstraintSense::GreaterEqual
                                              : ConstraintSense::Equal;
    model.add_constraint("c" + std::to_string(i), std::move(coeffs), sense,
                         std::round(uniform(gen, -4.0, 4.0) * 4.0) / 4.0);
  }
  for (int j = 0; j < n; ++j)
    model.obj_linear[j] = std::round(uniform(gen, -2.0, 2.0) * 4.0) / 4.0;
  return model;
}

}  // namespace reluplan::testing
