#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include <tissf/lp.hpp>

using namespace tissf;

namespace {

LpProblem box_corner_problem() {
  // min -x1 - x2 s.t. x1 <= 1, x2 <= 1, -x1 <= 0, -x2 <= 0.
  LpProblem lp;
  lp.c = Eigen::Vector2d(-1, -1);
  lp.G.resize(4, 2);
  lp.G << 1, 0, 0, 1, -1, 0, 0, -1;
  lp.g.resize(4);
  lp.g << 1, 1, 0, 0;
  return lp;
}

} // namespace

TEST_CASE("simplex finds the box corner") {
  LpSolution s = solve_simplex(box_corner_problem());
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(-2.0));
  CHECK(s.x(0) == doctest::Approx(1.0));
  CHECK(s.x(1) == doctest::Approx(1.0));
  // The two upper bounds are tight.
  REQUIRE(s.active_rows.size() >= 2);
}

TEST_CASE("simplex maximizes a direction over the square") {
  // max d.u over [-1,1]^2 with d = (2,1), posed as min of the negation.
  LpProblem lp;
  lp.c = Eigen::Vector2d(-2, -1);
  lp.G.resize(4, 2);
  lp.G << 1, 0, -1, 0, 0, 1, 0, -1;
  lp.g = Eigen::VectorXd::Ones(4);
  LpSolution s = solve_simplex(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  auto verts = oracles::box_vertices(Eigen::Vector2d(-1, -1),
                                     Eigen::Vector2d(1, 1));
  CHECK(s.objective ==
        doctest::Approx(-oracles::vertex_support(verts, Eigen::Vector2d(2, 1)))
            .epsilon(1e-12));
  CHECK(s.objective == doctest::Approx(-3.0));
}

TEST_CASE("simplex reports contradiction as Infeasible") {
  LpProblem lp;
  lp.c = Eigen::VectorXd::Ones(1);
  lp.G.resize(2, 1);
  lp.G << 1, -1;
  lp.g.resize(2);
  lp.g << 0, -1; // x <= 0 and x >= 1
  CHECK(solve_simplex(lp).status == LpStatus::Infeasible);
}

TEST_CASE("simplex reports a free descent direction as Unbounded") {
  LpProblem lp;
  lp.c = Eigen::VectorXd::Constant(1, -1.0); // min -x
  lp.G.resize(1, 1);
  lp.G << -1; // -x <= 0, x unbounded above
  lp.g = Eigen::VectorXd::Zero(1);
  CHECK(solve_simplex(lp).status == LpStatus::Unbounded);
}

TEST_CASE("simplex optimum satisfies its constraints with tight active rows") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    oracles::Lp2dCase c = oracles::random_lp2d(rng);
    LpProblem lp = oracles::to_lp_problem(c);
    LpSolution s = solve_simplex(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    Eigen::VectorXd residual = lp.G * s.x - lp.g;
    CHECK(residual.maxCoeff() <= 1e-8);
    for (int row : s.active_rows)
      CHECK(std::abs(residual(row)) <= 1e-8);
  }
}

TEST_CASE("two-variable solver on the documented instances") {
  // Separable bounds.
  LpSolution a = solve_2d({{1, 0, 1}, {0, 1, 2}}, Eigen::Vector2d(1, 1));
  REQUIRE(a.status == LpStatus::Optimal);
  CHECK(a.x(0) == doctest::Approx(1.0));
  CHECK(a.x(1) == doctest::Approx(2.0));
  CHECK(a.objective == doctest::Approx(3.0));

  // Three half-planes, optimum at the intersection of the first and third.
  LpSolution b = solve_2d({{1, 1, 2}, {1, -1, 0}, {0, 1, 0.5}},
                          Eigen::Vector2d(1, 12));
  REQUIRE(b.status == LpStatus::Optimal);
  CHECK(b.x(0) == doctest::Approx(1.5));
  CHECK(b.x(1) == doctest::Approx(0.5));
  CHECK(b.objective == doctest::Approx(7.5));

  // y2 is free to grow.
  LpSolution c = solve_2d({{1, 0, 0}}, Eigen::Vector2d(1, -1));
  CHECK(c.status == LpStatus::Unbounded);
}

TEST_CASE("two-variable solver edge rows") {
  // 0*y >= 1 is an infeasible constant.
  CHECK_THROWS_AS(solve_2d({{0, 0, 1}, {1, 0, 0}}, Eigen::Vector2d(1, 0)),
                  DegenerateConstraintError);
  // 0*y >= -1 is vacuous and ignored.
  LpSolution s = solve_2d({{0, 0, -1}, {1, 0, 3}, {0, 1, 4}},
                          Eigen::Vector2d(1, 1));
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == doctest::Approx(7.0));
  // No constraints at all cannot pin anything down.
  CHECK(solve_2d({{0, 0, -1}}, Eigen::Vector2d(1, 0)).status ==
        LpStatus::Unbounded);
  // Infeasible pair of parallel half-planes.
  CHECK(solve_2d({{1, 0, 2}, {-1, 0, -1}}, Eigen::Vector2d(1, 0)).status ==
        LpStatus::Infeasible);
}

TEST_CASE("two-variable solver agrees with the simplex on random instances") {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 300; ++i) {
    oracles::Lp2dCase c = oracles::random_lp2d(rng);
    LpSolution fast = solve_2d(c.constraints, c.w);
    LpSolution ref = solve_simplex(oracles::to_lp_problem(c));
    REQUIRE(fast.status == LpStatus::Optimal);
    REQUIRE(ref.status == LpStatus::Optimal);
    CHECK(std::abs(fast.objective - ref.objective) <= 1e-7);
  }
}

TEST_CASE("simplex support values match vertex enumeration") {
  std::mt19937_64 rng(606);
  for (int i = 0; i < 200; ++i) {
    int m = 1 + i % 3;
    oracles::PolytopeData poly = oracles::random_polytope(rng, m, 4);
    auto verts = oracles::polyhedron_vertices(poly.A, poly.b);
    Eigen::VectorXd d = oracles::random_direction(rng, m);
    // Support of {Au <= b} along d as min of the negated objective.
    LpProblem lp;
    lp.c = -d;
    lp.G = poly.A;
    lp.g = poly.b;
    LpSolution s = solve_simplex(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(std::abs(-s.objective - oracles::vertex_support(verts, d)) <= 1e-8);
  }
}

TEST_CASE("identical problems re-solve to bitwise identical points") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 30; ++i) {
    oracles::Lp2dCase c = oracles::random_lp2d(rng);
    LpProblem lp = oracles::to_lp_problem(c);
    LpSolution s1 = solve_simplex(lp);
    LpSolution s2 = solve_simplex(lp);
    REQUIRE(s1.status == s2.status);
    if (s1.status == LpStatus::Optimal) {
      CHECK(s1.x(0) == s2.x(0));
      CHECK(s1.x(1) == s2.x(1));
      CHECK(s1.objective == s2.objective);
    }
    LpSolution t1 = solve_2d(c.constraints, c.w);
    LpSolution t2 = solve_2d(c.constraints, c.w);
    REQUIRE(t1.status == t2.status);
    if (t1.status == LpStatus::Optimal) {
      CHECK(t1.x(0) == t2.x(0));
      CHECK(t1.x(1) == t2.x(1));
    }
  }
}
