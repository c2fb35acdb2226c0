#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "oracles.hpp"
#include <tissf/convex_sets.hpp>

using namespace tissf;
using Eigen::VectorXd;

namespace {

VectorXd vec1(double a) {
  VectorXd v(1);
  v << a;
  return v;
}

VectorXd vec2(double a, double b) {
  VectorXd v(2);
  v << a, b;
  return v;
}

// The square [-1,1]^2 as four half-spaces.
InputSet unit_square() {
  Eigen::MatrixXd A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  Eigen::VectorXd b = Eigen::VectorXd::Ones(4);
  return InputSet::polyhedron(A, b);
}

} // namespace

TEST_CASE("construction validates its arguments") {
  CHECK_THROWS_AS(InputSet::ball(0.0), Error);
  CHECK_THROWS_AS(InputSet::ball(-2.0), Error);
  CHECK_THROWS_AS(InputSet::box(vec1(1.0), vec1(-1.0)), Error);
  CHECK_NOTHROW(InputSet::box(vec1(2.0), vec1(2.0))); // degenerate but nonempty

  // Unbounded: a single half-space.
  Eigen::MatrixXd A(1, 2);
  A << 1, 0;
  CHECK_THROWS_AS(InputSet::polyhedron(A, Eigen::VectorXd::Ones(1)), Error);

  // Empty: x <= -1 and -x <= 0.
  Eigen::MatrixXd E(2, 1);
  E << 1, -1;
  Eigen::VectorXd e(2);
  e << -1, 0;
  CHECK_THROWS_AS(InputSet::polyhedron(E, e), Error);
}

TEST_CASE("support values on the documented sets") {
  CHECK(support_value(InputSet::ball(15.0), vec1(-1.0)) == doctest::Approx(15.0));
  CHECK(support_value(InputSet::box(vec1(-6.0), vec1(0.8)), vec1(-1.0)) ==
        doctest::Approx(6.0));

  InputSet square = unit_square();
  auto verts = oracles::box_vertices(vec2(-1, -1), vec2(1, 1));
  VectorXd d = vec2(2.0, 1.0);
  CHECK(support_value(square, d) ==
        doctest::Approx(oracles::vertex_support(verts, d)).epsilon(1e-12));
  CHECK(support_value(square, d) == doctest::Approx(3.0));
}

TEST_CASE("support points attain the support value") {
  CHECK(support_point(InputSet::ball(15.0), vec1(-1.0))(0) ==
        doctest::Approx(-15.0));
  CHECK(support_point(InputSet::box(vec1(-6.0), vec1(0.8)), vec1(-1.0))(0) ==
        doctest::Approx(-6.0));

  // Tie on the first component resolved to the hi endpoint.
  VectorXd u = support_point(InputSet::box(vec2(0, 0), vec2(2, 3)), vec2(0, 1));
  CHECK(u(0) == doctest::Approx(2.0));
  CHECK(u(1) == doctest::Approx(3.0));
  auto verts = oracles::box_vertices(vec2(0, 0), vec2(2, 3));
  CHECK(vec2(0, 1).dot(u) ==
        doctest::Approx(oracles::vertex_support(verts, vec2(0, 1))));
}

TEST_CASE("zero direction returns a member with support zero") {
  for (const InputSet& set :
       {InputSet::ball(2.0), InputSet::box(vec2(-1, 0), vec2(3, 4)),
        unit_square()}) {
    VectorXd d = VectorXd::Zero(2);
    CHECK(support_value(set, d) == 0.0);
    CHECK(contains(set, support_point(set, d), 1e-9));
  }
}

TEST_CASE("projection on the documented sets") {
  CHECK(project(InputSet::box(vec1(-6.0), vec1(0.8)), vec1(2.0), 1e-9)(0) ==
        doctest::Approx(0.8));
  CHECK(project(InputSet::ball(15.0), vec1(30.0), 1e-9)(0) ==
        doctest::Approx(15.0));

  // Square, projecting onto the active face; cross-checked by a dense grid.
  InputSet square = unit_square();
  VectorXd q = vec2(2.0, 0.5);
  VectorXd p = project(square, q, 1e-10);
  CHECK(p(0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(p(1) == doctest::Approx(0.5).epsilon(1e-7));
  double best = 1e300;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) {
      VectorXd u = vec2(-1.0 + i * 0.01, -1.0 + j * 0.01);
      best = std::min(best, (u - q).norm());
    }
  CHECK((p - q).norm() <= best + 1e-6);
}

TEST_CASE("membership tolerances") {
  CHECK(contains(InputSet::box(vec1(-6.0), vec1(0.8)), vec1(0.8), 1e-9));
  CHECK_FALSE(contains(InputSet::ball(15.0), vec1(15.0 + 1e-6), 1e-9));
  CHECK(contains(unit_square(), vec2(0, 0), 0.0));
}

TEST_CASE("support values match vertex enumeration on random sets") {
  std::mt19937_64 rng(101);
  for (int m = 1; m <= 4; ++m) {
    for (int s = 0; s < 6; ++s) {
      oracles::BoxData box = oracles::random_box(rng, m);
      auto verts = oracles::box_vertices(box.lo, box.hi);
      for (int k = 0; k < 21; ++k) {
        VectorXd d = oracles::random_direction(rng, m);
        CHECK(std::abs(support_value(box.set, d) -
                       oracles::vertex_support(verts, d)) <= 1e-8);
      }
    }
  }
  for (int m = 1; m <= 3; ++m) {
    for (int s = 0; s < 6; ++s) {
      oracles::PolytopeData poly = oracles::random_polytope(rng, m, 4);
      auto verts = oracles::polyhedron_vertices(poly.A, poly.b);
      REQUIRE(!verts.empty());
      for (int k = 0; k < 28; ++k) {
        VectorXd d = oracles::random_direction(rng, m);
        CHECK(std::abs(support_value(poly.set, d) -
                       oracles::vertex_support(verts, d)) <= 1e-8);
      }
    }
  }
  for (int k = 0; k < 500; ++k) {
    int m = 1 + k % 4;
    double gamma = oracles::uniform(rng, 0.3, 20.0);
    VectorXd d = oracles::random_direction(rng, m);
    CHECK(support_value(InputSet::ball(gamma), d) ==
          doctest::Approx(gamma * d.norm()).epsilon(1e-14));
  }
}

TEST_CASE("support function is positively homogeneous and subadditive") {
  std::mt19937_64 rng(11);
  std::vector<InputSet> sets = {InputSet::ball(3.0),
                                InputSet::box(vec2(-2, -0.5), vec2(1, 4)),
                                unit_square()};
  for (const InputSet& set : sets) {
    for (int k = 0; k < 100; ++k) {
      VectorXd d1 = oracles::random_direction(rng, 2);
      VectorXd d2 = oracles::random_direction(rng, 2);
      double scale = oracles::uniform(rng, 0.1, 10.0);
      double s1 = support_value(set, d1);
      CHECK(support_value(set, scale * d1) ==
            doctest::Approx(scale * s1).epsilon(1e-10));
      CHECK(support_value(set, d1 + d2) <=
            s1 + support_value(set, d2) + 1e-10);
    }
  }
}

TEST_CASE("support points and projections are members") {
  std::mt19937_64 rng(12);
  std::vector<InputSet> sets = {InputSet::ball(2.5),
                                InputSet::box(vec2(-2, -0.5), vec2(1, 4)),
                                oracles::random_polytope(rng, 2, 5).set};
  for (const InputSet& set : sets) {
    for (int k = 0; k < 60; ++k) {
      VectorXd d = oracles::random_direction(rng, 2);
      CHECK(contains(set, support_point(set, d), 1e-7));

      VectorXd q = 3.0 * oracles::gaussian_vector(rng, 2);
      VectorXd p = project(set, q, 1e-10);
      CHECK(contains(set, p, 1e-7));
      // No member is closer to q than the projection.
      VectorXd inside = project(set, oracles::gaussian_vector(rng, 2), 1e-10);
      CHECK((p - q).norm() <= (inside - q).norm() + 1e-6);
    }
  }
}

TEST_CASE("JSON round-trip preserves the set") {
  std::mt19937_64 rng(13);
  std::vector<InputSet> sets = {InputSet::ball(15.0),
                                InputSet::box(vec2(-6, -1), vec2(0.8, 2)),
                                unit_square()};
  for (const InputSet& set : sets) {
    nlohmann::json j = set;
    InputSet back = input_set_from_json(j);
    CHECK(std::string(back.type_name()) == set.type_name());
    for (int k = 0; k < 40; ++k) {
      VectorXd d = oracles::random_direction(rng, 2);
      CHECK(support_value(back, d) ==
            doctest::Approx(support_value(set, d)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(input_set_from_json(nlohmann::json{{"type", "cone"}}), Error);
}

TEST_CASE("non-finite directions are rejected") {
  CHECK_THROWS_AS(
      support_value(InputSet::ball(1.0),
                    vec1(std::numeric_limits<double>::quiet_NaN())),
      Error);
  CHECK_THROWS_AS(
      support_value(InputSet::ball(1.0),
                    vec1(std::numeric_limits<double>::infinity())),
      Error);
}
