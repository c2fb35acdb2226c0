#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tissf/errors.hpp"

namespace tissf {

// Dense linear programming, sized for support-function evaluation and the
// two-variable tuning LP: a few dozen rows, single digits of columns.

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpProblem {
  Eigen::VectorXd c; // minimize c.x
  Eigen::MatrixXd G; // subject to G x <= g, x free
  Eigen::VectorXd g;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;          // meaningful when Optimal
  double objective = 0.0;     // c.x when Optimal, -inf when Unbounded, NaN otherwise
  std::vector<int> active_rows; // constraints tight within 1e-8 at the optimum
};

// Two-phase primal simplex with Bland's rule (deterministic, cycle-free).
// Free variables are split internally. Infeasible/Unbounded are reported via
// the status field, never thrown; NumericalBreakdownError signals a pivot
// below 1e-12.
LpSolution solve_simplex(const LpProblem& lp);

// One constraint of the 2-variable LP: a1*y1 + a2*y2 >= rhs.
struct Constraint2d {
  double a1 = 0.0, a2 = 0.0, rhs = 0.0;
};

// Exact 2-variable LP: minimize w.y over the intersection of half-planes.
// Enumerates pairwise boundary intersections and per-line foot points, checks
// recession rays for unboundedness, and breaks objective ties
// lexicographically on (y1, y2). A constraint with a1 = a2 = 0 and rhs > 0
// throws DegenerateConstraintError (an infeasible constant).
LpSolution solve_2d(const std::vector<Constraint2d>& constraints,
                    const Eigen::Vector2d& w);

} // namespace tissf
