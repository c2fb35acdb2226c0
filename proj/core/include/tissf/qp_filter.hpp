#pragma once

#include <Eigen/Dense>

#include "tissf/convex_sets.hpp"

namespace tissf {

// Pointwise safety filter: minimize (1/2)||u - q||^2 subject to d.u >= rhs
// and u in U. A single affine constraint plus a projectable set admits an
// exact scalar dual method: u(mu) = project(U, q + mu*d^T) with the
// complementarity gap g(mu) = d.u(mu) - rhs nondecreasing in mu.

struct QpInstance {
  Eigen::VectorXd q;    // nominal input
  Eigen::RowVectorXd d; // constraint row
  double rhs = 0.0;
  InputSet set;
};

enum class QpStatus { Optimal, InfeasibleCertificate };

struct QpResult {
  QpStatus status = QpStatus::Optimal;
  Eigen::VectorXd u_star;
  double mu = 0.0;          // dual multiplier (infinity on certificates)
  double tissf_slack = 0.0; // d.u_star - rhs
  double set_violation = 0.0;
  double achievable = 0.0;  // max_{u in U} d.u, reported with certificates
};

// Dual bisection: if g(0) >= 0 the projection of q already satisfies the
// constraint (mu = 0); otherwise mu doubles from 1 (cap 1e12) until
// g(mu) >= 0 and bisects the bracket down to bisection_tol. Returns
// InfeasibleCertificate iff rhs > support_value(set, d) + bisection_tol.
// ||d|| = 0 degenerates to plain projection when rhs <= 0 and to a
// certificate otherwise. A final polish nudges u_star toward
// support_point(set, d) when round-off leaves the slack in (-1e-6, 0).
QpResult solve_safety_qp(const QpInstance& qp, double bisection_tol = 1e-10);

// Exhaustive grid reference: minimizes the same objective over a regular
// grid (boxes: [lo, hi]; balls: the bounding box with rejection). An oracle
// for tests, not a production solver. Throws DimensionTooLargeError for
// more than three inputs; only box and ball sets are supported.
QpResult brute_force_qp(const QpInstance& qp, int grid_points_per_dim);

} // namespace tissf
