#include "bcrk/simplex_lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bcrk::lp {

namespace {

constexpr double kPivotTol = 1e-9;

// Dense simplex tableau over the standard-form system A x = b, x >= 0 with
// b >= 0.  Rows carry an assigned basic variable; the objective is re-priced
// from scratch each time we need reduced costs, which is slow but keeps the
// arithmetic simple and robust for the small programs we solve.
struct Tableau {
  std::size_t m = 0, n = 0;          // constraints, variables
  std::vector<double> a;             // m x n, row-major
  std::vector<double> b;             // m
  std::vector<int> basis;            // m, column index basic in each row

  double& at(std::size_t r, std::size_t c) { return a[r * n + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * n + c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    double piv = at(pr, pc);
    for (std::size_t c = 0; c < n; ++c) a[pr * n + c] /= piv;
    b[pr] /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == pr) continue;
      double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) a[r * n + c] -= f * a[pr * n + c];
      b[r] -= f * b[pr];
      a[r * n + pc] = 0.0;  // cancel residual rounding exactly
    }
    basis[pr] = static_cast<int>(pc);
  }

  // Runs simplex on the given cost vector (length n).  Returns false if the
  // problem is unbounded below.  `frozen` columns may not enter the basis.
  bool minimize(const std::vector<double>& cost,
                const std::vector<bool>& frozen) {
    const std::size_t iter_cap = 50 * (m + n) * (m + n) + 1000;
    for (std::size_t iter = 0; iter < iter_cap; ++iter) {
      // Reduced costs: r_c = cost_c - cost_B . B^{-1} A_c, re-priced from the
      // current tableau (columns are already B^{-1} A).
      std::size_t enter = n;
      for (std::size_t c = 0; c < n; ++c) {
        if (frozen[c]) continue;
        double rc = cost[c];
        for (std::size_t r = 0; r < m; ++r) {
          double cb = cost[static_cast<std::size_t>(basis[r])];
          if (cb != 0.0) rc -= cb * at(r, c);
        }
        if (rc < -kPivotTol) {
          enter = c;  // Bland: first improving column
          break;
        }
      }
      if (enter == n) return true;  // optimal

      std::size_t leave = m;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m; ++r) {
        double col = at(r, enter);
        if (col > kPivotTol) {
          double ratio = b[r] / col;
          if (ratio < best_ratio - kPivotTol ||
              (ratio < best_ratio + kPivotTol &&
               (leave == m || basis[r] < basis[leave]))) {
            best_ratio = ratio;
            leave = r;
          }
        }
      }
      if (leave == m) return false;  // unbounded
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration cap exceeded");
  }
};

}  // namespace

Solution solve_min(const std::vector<double>& cost,
                   const std::vector<Constraint>& rows) {
  const std::size_t n0 = cost.size();
  const std::size_t m = rows.size();
  for (const auto& row : rows) {
    if (row.coef.size() != n0) {
      throw std::invalid_argument("constraint width mismatch");
    }
  }

  // Standard form: flip rows to make rhs nonnegative, add one slack/surplus
  // column per inequality, then one artificial per row lacking an obvious
  // basic column.
  std::size_t n_slack = 0;
  for (const auto& row : rows) {
    if (row.rel != Relation::EQ) ++n_slack;
  }
  const std::size_t n_total = n0 + n_slack + m;  // worst case: artificial/row
  Tableau t;
  t.m = m;
  t.n = n_total;
  t.a.assign(m * n_total, 0.0);
  t.b.assign(m, 0.0);
  t.basis.assign(m, -1);

  std::size_t slack_at = n0;
  std::size_t art_at = n0 + n_slack;
  std::vector<bool> is_artificial(n_total, false);

  for (std::size_t r = 0; r < m; ++r) {
    double sign = rows[r].rhs < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n0; ++c) t.at(r, c) = sign * rows[r].coef[c];
    t.b[r] = sign * rows[r].rhs;

    Relation rel = rows[r].rel;
    if (sign < 0.0) {
      if (rel == Relation::LE) rel = Relation::GE;
      else if (rel == Relation::GE) rel = Relation::LE;
    }
    bool has_basic = false;
    if (rel == Relation::LE) {
      t.at(r, slack_at) = 1.0;
      t.basis[r] = static_cast<int>(slack_at);
      has_basic = true;
      ++slack_at;
    } else if (rel == Relation::GE) {
      t.at(r, slack_at) = -1.0;  // surplus
      ++slack_at;
    }
    if (!has_basic) {
      t.at(r, art_at) = 1.0;
      t.basis[r] = static_cast<int>(art_at);
      is_artificial[art_at] = true;
      ++art_at;
    }
  }
  const std::size_t n_used = art_at;
  t.n = n_used;
  // Rebuild the matrix with the trimmed width.
  {
    std::vector<double> packed(m * n_used, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < n_used; ++c) {
        packed[r * n_used + c] = t.a[r * n_total + c];
      }
    }
    t.a = std::move(packed);
  }

  std::vector<bool> frozen(n_used, false);

  // Phase 1: drive the artificials to zero.
  bool any_artificial = false;
  {
    std::vector<double> phase1(n_used, 0.0);
    for (std::size_t c = 0; c < n_used; ++c) {
      if (is_artificial[c]) {
        phase1[c] = 1.0;
        any_artificial = true;
      }
    }
    if (any_artificial) {
      if (!t.minimize(phase1, frozen)) {
        throw std::runtime_error("phase-1 objective unbounded");  // impossible
      }
      double infeas = 0.0;
      for (std::size_t r = 0; r < m; ++r) {
        if (is_artificial[static_cast<std::size_t>(t.basis[r])]) {
          infeas += t.b[r];
        }
      }
      if (infeas > 1e-7) {
        Solution s;
        s.status = Status::Infeasible;
        return s;
      }
      // Pivot any artificial still basic (at zero level) out if possible.
      for (std::size_t r = 0; r < m; ++r) {
        std::size_t bc = static_cast<std::size_t>(t.basis[r]);
        if (!is_artificial[bc]) continue;
        std::size_t enter = n_used;
        for (std::size_t c = 0; c < n_used; ++c) {
          if (!is_artificial[c] && std::abs(t.at(r, c)) > kPivotTol) {
            enter = c;
            break;
          }
        }
        if (enter < n_used) t.pivot(r, enter);
        // else the row is redundant; the artificial stays basic at zero.
      }
      for (std::size_t c = 0; c < n_used; ++c) {
        if (is_artificial[c]) frozen[c] = true;
      }
    }
  }

  // Phase 2.
  std::vector<double> cost2(n_used, 0.0);
  for (std::size_t c = 0; c < n0; ++c) cost2[c] = cost[c];
  if (!t.minimize(cost2, frozen)) {
    Solution s;
    s.status = Status::Unbounded;
    return s;
  }

  Solution s;
  s.status = Status::Optimal;
  s.x.assign(n0, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    std::size_t bc = static_cast<std::size_t>(t.basis[r]);
    if (bc < n0) s.x[bc] = t.b[r];
  }
  s.objective = 0.0;
  for (std::size_t c = 0; c < n0; ++c) s.objective += cost[c] * s.x[c];
  return s;
}

}  // namespace bcrk::lp
