#pragma once

#include <cstddef>
#include <vector>

namespace bcrk::lp {

enum class Relation { LE, GE, EQ };

struct Constraint {
  std::vector<double> coef;  // one entry per variable
  Relation rel = Relation::LE;
  double rhs = 0.0;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;     // primal point (empty unless Optimal)
  double objective = 0.0;    // cost . x  (phase-2 value)
};

// Minimizes cost . x subject to the constraints and x >= 0, via a dense
// two-phase simplex with Bland's anti-cycling rule.  Intended for the small
// feasibility programs this library needs (hundreds of variables at most);
// not a general-purpose solver.
Solution solve_min(const std::vector<double>& cost,
                   const std::vector<Constraint>& rows);

}  // namespace bcrk::lp
