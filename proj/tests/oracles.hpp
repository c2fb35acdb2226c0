// Shared test oracles and deterministic instance generators. Everything here
// is independent of the production solve paths: support values come from
// explicit vertex enumeration, QP references from brute_force_qp's exhaustive
// grid, and every generator takes an explicit seed.
#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include <tissf/convex_sets.hpp>
#include <tissf/lp.hpp>
#include <tissf/qp_filter.hpp>

namespace oracles {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Eigen::VectorXd gaussian_vector(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) v(i) = n(rng);
  return v;
}

// Random direction with norm in [0.5, 2].
inline Eigen::VectorXd random_direction(std::mt19937_64& rng, int m) {
  Eigen::VectorXd d = gaussian_vector(rng, m);
  while (d.norm() < 1e-9) d = gaussian_vector(rng, m);
  return d * (uniform(rng, 0.5, 2.0) / d.norm());
}

// ------------------------------------------------------ vertex enumeration

inline std::vector<Eigen::VectorXd> box_vertices(const Eigen::VectorXd& lo,
                                                 const Eigen::VectorXd& hi) {
  const int m = static_cast<int>(lo.size());
  std::vector<Eigen::VectorXd> out;
  for (int mask = 0; mask < (1 << m); ++mask) {
    Eigen::VectorXd v(m);
    for (int i = 0; i < m; ++i) v(i) = (mask >> i & 1) ? hi(i) : lo(i);
    out.push_back(std::move(v));
  }
  return out;
}

// All feasible intersections of m facet boundaries of {Au <= b}, m <= 3.
// Exact for bounded nonempty systems: every vertex lies on >= m facets.
inline std::vector<Eigen::VectorXd> polyhedron_vertices(
    const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double feas_tol = 1e-7) {
  const int m = static_cast<int>(A.cols());
  const int p = static_cast<int>(A.rows());
  std::vector<Eigen::VectorXd> out;
  std::vector<int> idx(m);
  auto try_subset = [&](const std::vector<int>& rows) {
    Eigen::MatrixXd M(m, m);
    Eigen::VectorXd r(m);
    for (int i = 0; i < m; ++i) {
      M.row(i) = A.row(rows[i]);
      r(i) = b(rows[i]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible()) return;
    Eigen::VectorXd v = lu.solve(r);
    if (((A * v - b).array() <= feas_tol).all()) out.push_back(std::move(v));
  };
  if (m == 1) {
    for (int i = 0; i < p; ++i) try_subset({i});
  } else if (m == 2) {
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) try_subset({i, j});
  } else if (m == 3) {
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j)
        for (int k = j + 1; k < p; ++k) try_subset({i, j, k});
  }
  return out;
}

inline double vertex_support(const std::vector<Eigen::VectorXd>& vertices,
                             const Eigen::VectorXd& d) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) best = std::max(best, d.dot(v));
  return best;
}

// ---------------------------------------------------------- set generators

struct BoxData {
  Eigen::VectorXd lo, hi;
  tissf::InputSet set;
};

inline BoxData random_box(std::mt19937_64& rng, int m, double span_lo = 0.4,
                          double span_hi = 1.6) {
  Eigen::VectorXd lo(m), hi(m);
  for (int i = 0; i < m; ++i) {
    lo(i) = -uniform(rng, span_lo, span_hi);
    hi(i) = uniform(rng, span_lo, span_hi);
  }
  return {lo, hi, tissf::InputSet::box(lo, hi)};
}

struct PolytopeData {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  tissf::InputSet set;
};

// Bounded nonempty by construction: the 2m axis facets {|u_i| <= 2} cage the
// set and the origin is interior (all offsets >= 0.5).
inline PolytopeData random_polytope(std::mt19937_64& rng, int m,
                                    int extra_facets) {
  const int p = 2 * m + extra_facets;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p, m);
  Eigen::VectorXd b(p);
  for (int i = 0; i < m; ++i) {
    A(2 * i, i) = 1.0;
    b(2 * i) = 2.0;
    A(2 * i + 1, i) = -1.0;
    b(2 * i + 1) = 2.0;
  }
  for (int k = 0; k < extra_facets; ++k) {
    Eigen::VectorXd n = gaussian_vector(rng, m);
    while (n.norm() < 1e-9) n = gaussian_vector(rng, m);
    A.row(2 * m + k) = n.transpose() / n.norm();
    b(2 * m + k) = uniform(rng, 0.5, 1.5);
  }
  return {A, b, tissf::InputSet::polyhedron(A, b)};
}

// ------------------------------------------------- QP oracle instance suite

struct QpCase {
  tissf::QpInstance inst;
  int grid_points = 0; // per-dim resolution for the brute-force reference
  double spacing = 0.0; // max per-dim grid spacing of that reference
};

// Feasible box/ball instances sized so the grid reference resolves the
// optimum: the one affine constraint is kept inactive or weakly active
// (small multiplier), since the grid's objective error at an active affine
// face scales with multiplier x spacing.
inline std::vector<QpCase> qp_oracle_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<QpCase> cases;
  auto push = [&](int m, int grid_points, double s_lo, double s_hi,
                  bool active) {
    tissf::QpInstance qp;
    double span = 0.0; // max per-dim extent of the reference grid
    if (uniform(rng, 0.0, 1.0) < 0.5) {
      BoxData box = random_box(rng, m, 0.4, 1.6);
      qp.set = box.set;
      span = (box.hi - box.lo).maxCoeff();
    } else {
      double gamma = uniform(rng, 0.5, 1.6);
      qp.set = tissf::InputSet::ball(gamma);
      span = 2.0 * gamma;
    }
    // Nominal input strictly inside the set.
    qp.q = 0.85 * tissf::project(qp.set, 0.8 * gaussian_vector(rng, m), 1e-12);
    Eigen::VectorXd d = random_direction(rng, m);
    qp.d = d.transpose();
    const double sigma = tissf::support_value(qp.set, d);
    const double dq = d.dot(qp.q);
    if (active) {
      double s = uniform(rng, s_lo, s_hi);
      s = std::min(s, 0.8 * (sigma - dq) / d.norm());
      qp.rhs = dq + s * d.norm();
    } else {
      qp.rhs = dq - uniform(rng, 0.1, 1.0) * d.norm();
    }
    cases.push_back({qp, grid_points, span / (grid_points - 1)});
  };
  for (int i = 0; i < 80; ++i) push(1, 20001, 0.05, 0.6, i % 2 == 0);
  for (int i = 0; i < 80; ++i) push(2, 401, 0.02, 0.12, i % 2 == 0);
  for (int i = 0; i < 40; ++i) push(3, 101, 0.005, 0.02, i % 4 == 0);
  return cases;
}

// Variant tuned so the grid reference also localizes the minimizer: at an
// active affine face the best grid point can sit ~(2*mu*|d|/spacing)^(1/3)
// cells away tangentially, so active multipliers are kept small enough to
// pin that factor below 2, and the coarse m=3 grids get inactive instances
// only.
inline std::vector<QpCase> qp_module_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x51ca1ab1eULL);
  std::vector<QpCase> cases;
  auto push = [&](int m, int grid_points, double s_lo, double s_hi,
                  bool active) {
    tissf::QpInstance qp;
    double span = 0.0;
    if (uniform(rng, 0.0, 1.0) < 0.5) {
      BoxData box = random_box(rng, m, 0.4, 1.6);
      qp.set = box.set;
      span = (box.hi - box.lo).maxCoeff();
    } else {
      double gamma = uniform(rng, 0.5, 1.6);
      qp.set = tissf::InputSet::ball(gamma);
      span = 2.0 * gamma;
    }
    qp.q = 0.85 * tissf::project(qp.set, 0.8 * gaussian_vector(rng, m), 1e-12);
    Eigen::VectorXd d = random_direction(rng, m);
    qp.d = d.transpose();
    const double sigma = tissf::support_value(qp.set, d);
    const double dq = d.dot(qp.q);
    if (active) {
      double s = uniform(rng, s_lo, s_hi);
      s = std::min(s, 0.8 * (sigma - dq) / d.norm());
      qp.rhs = dq + s * d.norm();
    } else {
      qp.rhs = dq - uniform(rng, 0.1, 1.0) * d.norm();
    }
    cases.push_back({qp, grid_points, span / (grid_points - 1)});
  };
  for (int i = 0; i < 80; ++i) push(1, 20001, 0.05, 0.6, i % 2 == 0);
  for (int i = 0; i < 80; ++i) push(2, 401, 0.004, 0.02, i % 2 == 0);
  for (int i = 0; i < 40; ++i) push(3, 101, 0.0, 0.0, false);
  return cases;
}

// ------------------------------------------- bounded 2-variable LP suite

struct Lp2dCase {
  std::vector<tissf::Constraint2d> constraints;
  Eigen::Vector2d w;
};

// Feasible by construction (every row holds strictly at an interior anchor)
// and bounded (four box rows cage the feasible set around the anchor).
inline Lp2dCase random_lp2d(std::mt19937_64& rng) {
  Lp2dCase c;
  const double y1 = uniform(rng, -2.0, 2.0), y2 = uniform(rng, -2.0, 2.0);
  const double span = uniform(rng, 1.0, 5.0);
  c.constraints.push_back({1.0, 0.0, y1 - span});
  c.constraints.push_back({-1.0, 0.0, -(y1 + span)});
  c.constraints.push_back({0.0, 1.0, y2 - span});
  c.constraints.push_back({0.0, -1.0, -(y2 + span)});
  const int extra = 3 + static_cast<int>(uniform(rng, 0.0, 6.0));
  for (int k = 0; k < extra; ++k) {
    Eigen::VectorXd a = gaussian_vector(rng, 2);
    while (a.norm() < 0.2) a = gaussian_vector(rng, 2);
    c.constraints.push_back({a(0), a(1),
                             a(0) * y1 + a(1) * y2 - uniform(rng, 0.05, 2.0)});
  }
  Eigen::VectorXd w = gaussian_vector(rng, 2);
  while (w.norm() < 0.2) w = gaussian_vector(rng, 2);
  c.w = Eigen::Vector2d(w(0), w(1));
  return c;
}

// Equivalent form for the general simplex: minimize w.y s.t. -A y <= -rhs.
inline tissf::LpProblem to_lp_problem(const Lp2dCase& c) {
  tissf::LpProblem lp;
  const int p = static_cast<int>(c.constraints.size());
  lp.c = c.w;
  lp.G.resize(p, 2);
  lp.g.resize(p);
  for (int i = 0; i < p; ++i) {
    lp.G(i, 0) = -c.constraints[i].a1;
    lp.G(i, 1) = -c.constraints[i].a2;
    lp.g(i) = -c.constraints[i].rhs;
  }
  return lp;
}

} // namespace oracles
