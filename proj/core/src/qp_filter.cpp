#include "tissf/qp_filter.hpp"

#include <cmath>
#include <limits>

namespace tissf {

namespace {

constexpr double kMuCap = 1e12;

void validate(const QpInstance& qp) {
  if (qp.q.size() == 0) throw DimensionError("safety QP: empty nominal input");
  if (qp.d.size() != qp.q.size())
    throw DimensionError("safety QP: q and d dimensions disagree");
  if (!qp.q.allFinite() || !qp.d.allFinite() || !std::isfinite(qp.rhs))
    throw NonFiniteError("safety QP: instance contains NaN/inf");
  int sd = qp.set.dim();
  if (sd >= 0 && sd != qp.q.size())
    throw DimensionError("safety QP: input set dimension disagrees with q");
}

QpResult finish(const QpInstance& qp, Eigen::VectorXd u, double mu) {
  QpResult res;
  res.status = QpStatus::Optimal;
  res.mu = mu;
  res.tissf_slack = qp.d.dot(u) - qp.rhs;
  // Round-off from the projection can leave a hair of negative slack even
  // though the constraint is strictly satisfiable; blend toward the support
  // point, which has the largest attainable d.u, to clear it.
  if (res.tissf_slack > -1e-6 && res.tissf_slack < 0.0) {
    Eigen::VectorXd s = support_point(qp.set, qp.d.transpose());
    double du_s = qp.d.dot(s);
    double du_u = qp.d.dot(u);
    if (du_s > qp.rhs) {
      double theta = (qp.rhs - du_u) / (du_s - du_u);
      theta = std::min(1.0, std::max(0.0, theta));
      u = u + theta * (s - u);
      res.tissf_slack = qp.d.dot(u) - qp.rhs;
    }
  }
  res.u_star = std::move(u);
  res.set_violation = set_violation(qp.set, res.u_star);
  res.achievable = support_value(qp.set, qp.d.transpose());
  return res;
}

QpResult certificate(const QpInstance& qp, double achievable) {
  QpResult res;
  res.status = QpStatus::InfeasibleCertificate;
  res.u_star = support_point(qp.set, qp.d.transpose()); // best effort
  res.mu = std::numeric_limits<double>::infinity();
  res.tissf_slack = qp.d.dot(res.u_star) - qp.rhs;
  res.set_violation = set_violation(qp.set, res.u_star);
  res.achievable = achievable;
  return res;
}

} // namespace

QpResult solve_safety_qp(const QpInstance& qp, double bisection_tol) {
  validate(qp);
  if (bisection_tol <= 0.0) throw Error("safety QP: tolerance must be positive");

  const double achievable = support_value(qp.set, qp.d.transpose());
  if (qp.rhs > achievable + bisection_tol) return certificate(qp, achievable);

  if (qp.d.norm() == 0.0) {
    // rhs <= tol here (else the certificate fired); the constraint is
    // vacuous and the filter reduces to plain projection.
    return finish(qp, project(qp.set, qp.q), 0.0);
  }

  auto u_of = [&](double mu) {
    return project(qp.set, qp.q + mu * qp.d.transpose());
  };
  auto gap = [&](const Eigen::VectorXd& u) { return qp.d.dot(u) - qp.rhs; };

  Eigen::VectorXd u0 = u_of(0.0);
  if (gap(u0) >= 0.0) return finish(qp, std::move(u0), 0.0);

  // Bracket the root: double mu until the gap turns nonnegative.
  double lo = 0.0, hi = 1.0;
  Eigen::VectorXd u_hi = u_of(hi);
  while (gap(u_hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > kMuCap) {
      // rhs is within tolerance of the support value; the support point is
      // the (near-)unique feasible input.
      return finish(qp, support_point(qp.set, qp.d.transpose()), kMuCap);
    }
    u_hi = u_of(hi);
  }

  while (hi - lo > bisection_tol) {
    double mid = 0.5 * (lo + hi);
    if (gap(u_of(mid)) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return finish(qp, u_of(hi), hi);
}

QpResult brute_force_qp(const QpInstance& qp, int grid_points_per_dim) {
  validate(qp);
  const int m = static_cast<int>(qp.q.size());
  if (m > 3) throw DimensionTooLargeError("grid reference supports at most 3 inputs");
  if (grid_points_per_dim < 2) throw Error("grid reference needs >= 2 points per axis");

  Eigen::VectorXd lo(m), hi(m);
  bool is_ball = false;
  double gamma = 0.0;
  qp.set.visit([&](const auto& rep) {
    using T = std::decay_t<decltype(rep)>;
    if constexpr (std::is_same_v<T, Ball>) {
      is_ball = true;
      gamma = rep.gamma;
      lo.setConstant(-rep.gamma);
      hi.setConstant(rep.gamma);
    } else if constexpr (std::is_same_v<T, Box>) {
      lo = rep.lo;
      hi = rep.hi;
    } else {
      throw Error("grid reference supports only box and ball sets");
    }
  });

  QpResult best;
  best.status = QpStatus::InfeasibleCertificate;
  best.mu = std::numeric_limits<double>::quiet_NaN(); // dual not recovered
  best.achievable = support_value(qp.set, qp.d.transpose());
  double best_obj = std::numeric_limits<double>::infinity();

  std::vector<int> idx(m, 0);
  Eigen::VectorXd u(m);
  const int N = grid_points_per_dim;
  while (true) {
    for (int a = 0; a < m; ++a)
      u(a) = lo(a) + (hi(a) - lo(a)) * idx[a] / (N - 1);
    bool member = !is_ball || u.norm() <= gamma + 1e-12;
    if (member && qp.d.dot(u) >= qp.rhs) {
      double obj = 0.5 * (u - qp.q).squaredNorm();
      if (obj < best_obj) {
        best_obj = obj;
        best.status = QpStatus::Optimal;
        best.u_star = u;
        best.tissf_slack = qp.d.dot(u) - qp.rhs;
        best.set_violation = set_violation(qp.set, u);
      }
    }
    int a = m - 1;
    while (a >= 0 && ++idx[a] == N) idx[a--] = 0;
    if (a < 0) break;
  }
  return best;
}

} // namespace tissf
