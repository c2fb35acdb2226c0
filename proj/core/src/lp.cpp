#include "tissf/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tissf {

namespace {

constexpr double kPivotFloor = 1e-12;   // below this a pivot is a breakdown
constexpr double kEntryTol = 1e-9;      // reduced-cost / ratio-test threshold
constexpr int kMaxPivots = 50000;       // Bland's rule terminates; pure safeguard

double feas_tol(double rhs) { return 1e-9 * std::max(1.0, std::abs(rhs)); }

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw NonFiniteError(std::string(what) + " contains NaN/inf");
}

// Dense tableau with the objective carried as an extra row (row p). basis[i]
// holds the column basic in constraint row i.
struct Tableau {
  Eigen::MatrixXd t; // (p+1) x (cols+1); last column is the rhs
  std::vector<int> basis;
  int p = 0;

  void pivot(int row, int col) {
    double piv = t(row, col);
    if (std::abs(piv) < kPivotFloor)
      throw NumericalBreakdownError("simplex selected a pivot below 1e-12");
    t.row(row) /= piv;
    for (int i = 0; i < t.rows(); ++i) {
      if (i == row) continue;
      double f = t(i, col);
      if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    basis[row] = col;
  }

  // Returns Optimal or Unbounded. allow(col) masks out columns that may not
  // enter (phase-2 artificials).
  template <class Allow>
  LpStatus iterate(const Allow& allow) {
    int cols = static_cast<int>(t.cols()) - 1;
    for (int iter = 0; iter < kMaxPivots; ++iter) {
      // Bland: entering column = lowest index with a negative reduced cost.
      int enter = -1;
      for (int j = 0; j < cols; ++j) {
        if (allow(j) && t(p, j) < -kEntryTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      // Ratio test; ties resolved toward the smallest basic variable index
      // (the other half of Bland's rule).
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < p; ++i) {
        double a = t(i, enter);
        if (a <= kEntryTol) continue;
        double ratio = t(i, cols) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 &&
             (leave < 0 || basis[i] < basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
    throw NumericalBreakdownError("simplex exceeded the pivot cap");
  }
};

std::vector<int> tight_rows(const Eigen::MatrixXd& G, const Eigen::VectorXd& g,
                            const Eigen::VectorXd& x) {
  std::vector<int> rows;
  Eigen::VectorXd resid = g - G * x;
  for (int i = 0; i < resid.size(); ++i)
    if (std::abs(resid(i)) <= 1e-8) rows.push_back(i);
  return rows;
}

} // namespace

LpSolution solve_simplex(const LpProblem& lp) {
  const int n = static_cast<int>(lp.c.size());
  const int p = static_cast<int>(lp.G.rows());
  if (lp.G.cols() != n || lp.g.size() != p)
    throw DimensionError("solve_simplex: G/g/c dimensions disagree");
  require_finite(lp.c, "objective");
  require_finite(lp.G, "constraint matrix");
  require_finite(lp.g, "constraint rhs");

  // Standard form: x = xp - xm with xp, xm >= 0, one slack per row, one
  // artificial per row whose rhs had to be negated (their slack enters with
  // coefficient -1 and cannot seed the basis).
  std::vector<bool> negated(p);
  int n_art = 0;
  for (int i = 0; i < p; ++i) {
    negated[i] = lp.g(i) < 0.0;
    if (negated[i]) ++n_art;
  }
  const int cols = 2 * n + p + n_art;
  const int rhs_col = cols;

  Tableau tab;
  tab.p = p;
  tab.t = Eigen::MatrixXd::Zero(p + 1, cols + 1);
  tab.basis.assign(p, -1);

  int art = 2 * n + p; // next artificial column
  for (int i = 0; i < p; ++i) {
    double s = negated[i] ? -1.0 : 1.0;
    tab.t.block(i, 0, 1, n) = s * lp.G.row(i);
    tab.t.block(i, n, 1, n) = -s * lp.G.row(i);
    tab.t(i, 2 * n + i) = s; // slack
    tab.t(i, rhs_col) = s * lp.g(i);
    if (negated[i]) {
      tab.t(i, art) = 1.0;
      tab.basis[i] = art++;
    } else {
      tab.basis[i] = 2 * n + i;
    }
  }

  const double rhs_scale = 1.0 + lp.g.cwiseAbs().maxCoeff();

  // Phase 1: minimize the sum of artificials.
  if (n_art > 0) {
    for (int j = 2 * n + p; j < cols; ++j) tab.t(p, j) = 1.0;
    for (int i = 0; i < p; ++i)
      if (tab.basis[i] >= 2 * n + p) tab.t.row(p) -= tab.t.row(i);
    tab.iterate([](int) { return true; }); // cannot be unbounded (costs >= 0)
    double infeas = -tab.t(p, rhs_col);
    if (infeas > 1e-8 * rhs_scale) {
      LpSolution sol;
      sol.status = LpStatus::Infeasible;
      sol.objective = std::numeric_limits<double>::quiet_NaN();
      return sol;
    }
    // Pivot lingering zero-level artificials out of the basis where possible.
    for (int i = 0; i < p; ++i) {
      if (tab.basis[i] < 2 * n + p) continue;
      int col = -1;
      for (int j = 0; j < 2 * n + p; ++j) {
        if (std::abs(tab.t(i, j)) > kEntryTol) {
          col = j;
          break;
        }
      }
      if (col >= 0) tab.pivot(i, col);
      // else: the row is redundant; its artificial stays basic at zero and
      // is frozen out of phase 2 by the entering mask.
    }
  }

  // Phase 2: restore the real objective, eliminated through the basis.
  tab.t.row(p).setZero();
  tab.t.block(p, 0, 1, n) = lp.c.transpose();
  tab.t.block(p, n, 1, n) = -lp.c.transpose();
  for (int i = 0; i < p; ++i) {
    int b = tab.basis[i];
    double cb = tab.t(p, b);
    if (cb != 0.0) tab.t.row(p) -= cb * tab.t.row(i);
  }
  LpStatus status =
      tab.iterate([&](int j) { return j < 2 * n + p; }); // no artificials

  LpSolution sol;
  sol.status = status;
  if (status == LpStatus::Unbounded) {
    sol.objective = -std::numeric_limits<double>::infinity();
    return sol;
  }

  Eigen::VectorXd full = Eigen::VectorXd::Zero(cols);
  for (int i = 0; i < p; ++i) full(tab.basis[i]) = tab.t(i, rhs_col);
  sol.x = full.head(n) - full.segment(n, n);
  sol.objective = lp.c.dot(sol.x);
  sol.active_rows = tight_rows(lp.G, lp.g, sol.x);
  return sol;
}

LpSolution solve_2d(const std::vector<Constraint2d>& constraints,
                    const Eigen::Vector2d& w) {
  if (!w.allFinite()) throw NonFiniteError("solve_2d: objective contains NaN/inf");

  struct Row {
    Eigen::Vector2d a;
    double rhs;
    int index; // position in the caller's list
  };
  std::vector<Row> rows;
  rows.reserve(constraints.size());
  for (int i = 0; i < static_cast<int>(constraints.size()); ++i) {
    const auto& c = constraints[i];
    if (!std::isfinite(c.a1) || !std::isfinite(c.a2) || !std::isfinite(c.rhs))
      throw NonFiniteError("solve_2d: constraint contains NaN/inf");
    if (c.a1 == 0.0 && c.a2 == 0.0) {
      if (c.rhs > 0.0)
        throw DegenerateConstraintError(
            "solve_2d: constraint 0 >= rhs with rhs > 0");
      continue; // vacuous
    }
    rows.push_back({{c.a1, c.a2}, c.rhs, i});
  }

  auto feasible = [&](const Eigen::Vector2d& y) {
    for (const auto& r : rows)
      if (r.a.dot(y) < r.rhs - feas_tol(r.rhs)) return false;
    return true;
  };

  // Candidate optima: pairwise boundary intersections cover every vertex;
  // per-line foot points (projection of the origin onto the boundary) cover
  // feasible sets with no vertex at all; the origin covers the unconstrained
  // case.
  std::vector<Eigen::Vector2d> cands;
  cands.emplace_back(0.0, 0.0);
  for (const auto& r : rows) cands.emplace_back(r.a * (r.rhs / r.a.squaredNorm()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = i + 1; j < rows.size(); ++j) {
      const auto& ri = rows[i];
      const auto& rj = rows[j];
      double det = ri.a.x() * rj.a.y() - ri.a.y() * rj.a.x();
      double scale = ri.a.norm() * rj.a.norm();
      if (std::abs(det) <= 1e-12 * std::max(1.0, scale)) continue;
      cands.emplace_back((ri.rhs * rj.a.y() - rj.rhs * ri.a.y()) / det,
                         (ri.a.x() * rj.rhs - rj.a.x() * ri.rhs) / det);
    }
  }

  LpSolution sol;
  bool have = false;
  Eigen::Vector2d best;
  double best_obj = 0.0;
  for (const auto& y : cands) {
    if (!y.allFinite() || !feasible(y)) continue;
    double obj = w.dot(y);
    if (!have) {
      have = true;
      best = y;
      best_obj = obj;
      continue;
    }
    double tie = 1e-12 * (1.0 + std::abs(best_obj));
    if (obj < best_obj - tie) {
      best = y;
      best_obj = obj;
    } else if (obj <= best_obj + tie) {
      // Lexicographic tie-break on (y1, y2).
      if (y.x() < best.x() - 1e-12 ||
          (std::abs(y.x() - best.x()) <= 1e-12 && y.y() < best.y() - 1e-12)) {
        best = y;
        best_obj = w.dot(y);
      }
    }
  }

  if (!have) {
    sol.status = LpStatus::Infeasible;
    sol.objective = std::numeric_limits<double>::quiet_NaN();
    return sol;
  }

  // Recession check: a feasible direction r (a.r >= 0 for every row) with
  // w.r < 0 certifies an unbounded objective. For a 2-D cone it suffices to
  // test the rotated constraint normals (the extreme-ray candidates) and -w.
  std::vector<Eigen::Vector2d> ray_cands;
  for (const auto& r : rows) {
    ray_cands.emplace_back(-r.a.y(), r.a.x());
    ray_cands.emplace_back(r.a.y(), -r.a.x());
  }
  ray_cands.emplace_back(-w);
  for (auto& r : ray_cands) {
    double nrm = r.norm();
    if (nrm <= 0.0) continue;
    r /= nrm;
    bool in_cone = true;
    for (const auto& row : rows)
      if (row.a.dot(r) < -1e-10 * row.a.norm()) {
        in_cone = false;
        break;
      }
    if (in_cone && w.dot(r) < -1e-10 * std::max(1.0, w.norm())) {
      sol.status = LpStatus::Unbounded;
      sol.x = best; // a feasible witness
      sol.objective = -std::numeric_limits<double>::infinity();
      return sol;
    }
  }

  sol.status = LpStatus::Optimal;
  sol.x = best;
  sol.objective = best_obj;
  for (const auto& r : rows)
    if (std::abs(r.a.dot(best) - r.rhs) <= 1e-8) sol.active_rows.push_back(r.index);
  return sol;
}

} // namespace tissf
