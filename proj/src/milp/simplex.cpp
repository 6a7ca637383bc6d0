// SPDX-License-Identifier: Apache-2.0

#include "reluplan/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "reluplan/errors.hpp"
#include "reluplan/kernels.hpp"

namespace reluplan {

namespace {

enum VarStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFreeNonbasic };

class SimplexSolver {
 public:
  SimplexSolver(const Model& model, const SimplexOptions& opts)
      : model_(model), opts_(opts) {
    build();
  }

  LpSolution solve() {
    // Phase 1: drive artificial variables to zero.
    if (num_art_ > 0) {
      set_phase1_costs();
      const Outcome out = iterate();
      if (out == Outcome::IterLimit)
        throw NumericError("simplex stalled in phase 1");
      if (phase1_objective() > opts_.feas_tol * rhs_scale_)
        return finish(SolveStatus::Infeasible);
      retire_artificials();
    }

    set_phase2_costs();
    const Outcome out = iterate();
    if (out == Outcome::IterLimit) throw NumericError("simplex stalled");
    if (out == Outcome::Unbounded) return finish(SolveStatus::Unbounded);
    return finish(SolveStatus::Optimal);
  }

 private:
  enum class Outcome { Optimal, Unbounded, IterLimit };

  const Model& model_;
  SimplexOptions opts_;

  int m_ = 0;        // live rows (may shrink when redundant rows drop)
  int orig_m_ = 0;   // rows at construction; slack columns keep this layout
  int n_ = 0;        // structural columns
  int ncols_ = 0;    // structural + slack + artificial
  int num_art_ = 0;  // artificial columns (at the tail)
  double rhs_scale_ = 1.0;

  std::vector<double> tab_;   // m_ x ncols_, row-major
  std::vector<double> d_;     // reduced costs per column
  std::vector<double> cost_;  // phase costs per column
  std::vector<double> lo_, hi_, val_;
  std::vector<double> xb_;  // basic variable values per row
  std::vector<double> b_;   // rhs per original row (indexed like slacks)
  std::vector<int> basis_, in_row_;
  std::vector<std::uint8_t> stat_;
  bool bland_ = false;
  int degen_count_ = 0;
  std::int64_t pivots_ = 0;

  double* row(int r) { return tab_.data() + static_cast<std::size_t>(r) * ncols_; }

  void build() {
    m_ = model_.num_cons();
    orig_m_ = m_;
    n_ = model_.num_vars();

    // Column layout: structural | one slack per row | artificials (added
    // below for rows whose slack cannot absorb the initial residual).
    const int max_cols = n_ + 2 * m_;
    lo_.assign(max_cols, 0.0);
    hi_.assign(max_cols, 0.0);
    val_.assign(max_cols, 0.0);
    stat_.assign(max_cols, kAtLower);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = model_.vars[j].lo;
      hi_[j] = model_.vars[j].hi;
      if (std::isfinite(lo_[j])) {
        val_[j] = lo_[j];
        stat_[j] = kAtLower;
      } else if (std::isfinite(hi_[j])) {
        val_[j] = hi_[j];
        stat_[j] = kAtUpper;
      } else {
        val_[j] = 0.0;
        stat_[j] = kFreeNonbasic;
      }
    }
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      switch (model_.cons[i].sense) {
        case ConstraintSense::LessEqual:
          lo_[s] = 0.0;
          hi_[s] = kInf;
          break;
        case ConstraintSense::GreaterEqual:
          lo_[s] = -kInf;
          hi_[s] = 0.0;
          break;
        case ConstraintSense::Equal:
          lo_[s] = hi_[s] = 0.0;
          break;
      }
    }

    ncols_ = n_ + m_;  // artificials appended after residual check
    b_.resize(m_);
    std::vector<double> resid(m_);
    rhs_scale_ = 1.0;
    for (int i = 0; i < m_; ++i) {
      b_[i] = model_.cons[i].rhs;
      rhs_scale_ = std::max(rhs_scale_, std::abs(b_[i]));
      double r = b_[i];
      for (const auto& [j, a] : model_.cons[i].coeffs) r -= a * val_[j];
      resid[i] = r;
    }

    basis_.assign(m_, -1);
    xb_.assign(m_, 0.0);
    std::vector<int> art_sign(m_, 0);
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      if (resid[i] >= lo_[s] && resid[i] <= hi_[s]) {
        basis_[i] = s;
        xb_[i] = resid[i];
      } else {
        // Slack pinned at its nearest bound; artificial carries the rest.
        const double sb = std::clamp(resid[i], lo_[s], hi_[s]);
        val_[s] = sb;
        stat_[s] = sb == lo_[s] ? kAtLower : kAtUpper;
        const double rr = resid[i] - sb;
        const int a = n_ + m_ + num_art_;
        art_sign[i] = rr >= 0 ? 1 : -1;
        lo_[a] = 0.0;
        hi_[a] = kInf;
        basis_[i] = a;
        xb_[i] = std::abs(rr);
        ++num_art_;
      }
    }
    ncols_ = n_ + m_ + num_art_;

    tab_.assign(static_cast<std::size_t>(m_) * ncols_, 0.0);
    int art = 0;
    for (int i = 0; i < m_; ++i) {
      double* tr = row(i);
      const double sign = art_sign[i] == 0 ? 1.0 : art_sign[i];
      for (const auto& [j, a] : model_.cons[i].coeffs) tr[j] += sign * a;
      tr[n_ + i] = sign;
      if (art_sign[i] != 0) {
        tr[n_ + m_ + art] = 1.0;  // row pre-scaled so the basic column is +1
        ++art;
      }
    }

    in_row_.assign(ncols_, -1);
    for (int i = 0; i < m_; ++i) {
      in_row_[basis_[i]] = i;
      stat_[basis_[i]] = kBasic;
    }

    cost_.assign(ncols_, 0.0);
    d_.assign(ncols_, 0.0);
  }

  void set_phase1_costs() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int a = n_ + m_; a < ncols_; ++a) cost_[a] = 1.0;
    reset_reduced_costs();
  }

  void set_phase2_costs() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    const double sgn =
        model_.objective_sense == ObjectiveSense::Maximize ? -1.0 : 1.0;
    for (int j = 0; j < n_; ++j) cost_[j] = sgn * model_.obj_linear[j];
    reset_reduced_costs();
  }

  void reset_reduced_costs() {
    std::copy(cost_.begin(), cost_.end(), d_.begin());
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb != 0.0) kernels::axpy(-cb, row(i), d_.data(), ncols_);
    }
    for (int i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
  }

  double phase1_objective() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= n_ + m_) s += xb_[i];
    return s;
  }

  bool fixed(int j) const { return lo_[j] == hi_[j]; }

  // Entering column and direction under the current pricing rule.
  bool price(int& enter, int& dir) const {
    enter = -1;
    dir = 0;
    double best = opts_.opt_tol;
    for (int j = 0; j < ncols_; ++j) {
      if (stat_[j] == kBasic || fixed(j)) continue;
      int dj_dir = 0;
      if (stat_[j] == kAtLower && d_[j] < -opts_.opt_tol)
        dj_dir = 1;
      else if (stat_[j] == kAtUpper && d_[j] > opts_.opt_tol)
        dj_dir = -1;
      else if (stat_[j] == kFreeNonbasic && std::abs(d_[j]) > opts_.opt_tol)
        dj_dir = d_[j] < 0 ? 1 : -1;
      if (dj_dir == 0) continue;
      if (bland_) {
        enter = j;
        dir = dj_dir;
        return true;
      }
      if (std::abs(d_[j]) > best) {
        best = std::abs(d_[j]);
        enter = j;
        dir = dj_dir;
      }
    }
    return enter >= 0;
  }

  Outcome iterate() {
    const std::int64_t cap =
        opts_.max_iters > 0
            ? opts_.max_iters
            : 5000 + 400LL * (static_cast<std::int64_t>(m_) + ncols_);
    for (std::int64_t it = 0; it < cap; ++it) {
      int enter, dir;
      if (!price(enter, dir)) return Outcome::Optimal;

      // Ratio test: first binding basic bound, else the entering
      // variable's own opposite bound (a bound flip).
      double step = kInf;
      if (std::isfinite(lo_[enter]) && std::isfinite(hi_[enter]))
        step = hi_[enter] - lo_[enter];
      int leave = -1;
      int leave_to = kAtLower;
      const double tie = 1e-10;
      for (int r = 0; r < m_; ++r) {
        const double w = dir * row(r)[enter];
        double ratio;
        int to;
        if (w > opts_.pivot_tol) {
          if (!std::isfinite(lo_[basis_[r]])) continue;
          ratio = (xb_[r] - lo_[basis_[r]]) / w;
          to = kAtLower;
        } else if (w < -opts_.pivot_tol) {
          if (!std::isfinite(hi_[basis_[r]])) continue;
          ratio = (hi_[basis_[r]] - xb_[r]) / (-w);
          to = kAtUpper;
        } else {
          continue;
        }
        ratio = std::max(ratio, 0.0);
        const bool better =
            ratio < step - tie ||
            (ratio <= step + tie &&
             (leave == -1 || basis_[r] < basis_[leave]));
        if (better) {
          step = ratio;
          leave = r;
          leave_to = to;
        }
      }

      if (!std::isfinite(step)) return Outcome::Unbounded;

      ++pivots_;
      if (leave == -1) {
        // Bound flip: no basis change.
        const double delta = dir * step;
        for (int r = 0; r < m_; ++r) xb_[r] -= delta * row(r)[enter];
        val_[enter] = dir > 0 ? hi_[enter] : lo_[enter];
        stat_[enter] = dir > 0 ? kAtUpper : kAtLower;
      } else {
        if (step <= 1e-11 && !bland_ &&
            ++degen_count_ >= opts_.degenerate_pivot_budget)
          bland_ = true;
        pivot(enter, dir, leave, leave_to, step);
      }
      if ((pivots_ & 511) == 0) refresh_basics();
    }
    return Outcome::IterLimit;
  }

  void pivot(int enter, int dir, int r, int leave_to, double step) {
    const double delta = dir * step;
    for (int i = 0; i < m_; ++i)
      if (i != r) xb_[i] -= delta * row(i)[enter];
    const double enter_val = val_[enter] + delta;

    const int leaving = basis_[r];
    stat_[leaving] = static_cast<std::uint8_t>(leave_to);
    val_[leaving] = leave_to == kAtLower ? lo_[leaving] : hi_[leaving];
    in_row_[leaving] = -1;

    double* pr = row(r);
    const double piv = pr[enter];
    kernels::scale(pr, 1.0 / piv, ncols_);
    pr[enter] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* ri = row(i);
      const double f = ri[enter];
      if (f != 0.0) {
        kernels::axpy(-f, pr, ri, ncols_);
        ri[enter] = 0.0;
      }
    }
    const double fd = d_[enter];
    if (fd != 0.0) {
      kernels::axpy(-fd, pr, d_.data(), ncols_);
      d_[enter] = 0.0;
    }

    basis_[r] = enter;
    in_row_[enter] = r;
    stat_[enter] = kBasic;
    xb_[r] = enter_val;
  }

  // Recomputes basic values from the tableau to bound numerical drift.
  // The original slack columns form the identity, so their tableau block
  // is the current basis inverse.
  void refresh_basics() {
    for (int r = 0; r < m_; ++r) {
      double acc = 0.0;
      const double* tr = row(r);
      for (int i = 0; i < orig_m_; ++i)
        if (b_[i] != 0.0) acc += tr[n_ + i] * b_[i];
      for (int j = 0; j < ncols_; ++j) {
        if (stat_[j] == kBasic) continue;
        const double v = val_[j];
        if (v != 0.0) acc -= tr[j] * v;
      }
      xb_[r] = acc;
    }
  }

  // Pivot basic artificials out (or drop redundant rows), then pin them.
  void retire_artificials() {
    for (int r = m_ - 1; r >= 0; --r) {
      if (basis_[r] < n_ + m_) continue;
      const double* tr = row(r);
      int best = -1;
      double best_mag = opts_.pivot_tol;
      for (int j = 0; j < n_ + m_; ++j) {
        if (stat_[j] == kBasic || fixed(j)) continue;
        if (std::abs(tr[j]) > best_mag) {
          best_mag = std::abs(tr[j]);
          best = j;
        }
      }
      if (best >= 0) {
        pivot(best, 1, r, kAtLower, 0.0);
      } else {
        drop_row(r);
      }
    }
    for (int a = n_ + m_; a < ncols_; ++a) {
      lo_[a] = hi_[a] = 0.0;
      val_[a] = 0.0;
      if (stat_[a] != kBasic) stat_[a] = kAtLower;
    }
  }

  void drop_row(int r) {
    const int leaving = basis_[r];
    in_row_[leaving] = -1;
    stat_[leaving] = kAtLower;
    val_[leaving] = 0.0;
    lo_[leaving] = hi_[leaving] = 0.0;
    const int last = m_ - 1;
    if (r != last) {
      std::copy(row(last), row(last) + ncols_, row(r));
      basis_[r] = basis_[last];
      xb_[r] = xb_[last];
      in_row_[basis_[r]] = r;
    }
    --m_;
    tab_.resize(static_cast<std::size_t>(m_) * ncols_);
    basis_.resize(m_);
    xb_.resize(m_);
  }

  LpSolution finish(SolveStatus status) {
    LpSolution sol;
    sol.status = status;
    if (status != SolveStatus::Optimal) return sol;
    sol.values.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j)
      sol.values[j] = stat_[j] == kBasic ? xb_[in_row_[j]] : val_[j];
    sol.objective = model_.objective_value(sol.values);
    const double infeas = model_.max_infeasibility(sol.values);
    if (infeas > 50.0 * opts_.feas_tol * rhs_scale_)
      throw NumericError("simplex lost feasibility (residual " +
                         std::to_string(infeas) + ")");
    return sol;
  }
};

}  // namespace

LpSolution solve_lp(const Model& model, const SimplexOptions& opts) {
  if (model.has_quadratic())
    throw Error("solve_lp: model has a quadratic objective");
  model.validate();
  SimplexSolver solver(model, opts);
  return solver.solve();
}

}  // namespace reluplan
