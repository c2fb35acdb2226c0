#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>
#include <variant>

#include "tissf/errors.hpp"

namespace tissf {

// Admissible-input sets. All three variants are convex, compact and nonempty;
// the polyhedron variant proves this about itself at construction time.

struct Ball {
  double gamma = 1.0; // { u : ||u||_2 <= gamma }, centred at the origin
};

struct Box {
  Eigen::VectorXd lo, hi; // { u : lo <= u <= hi } componentwise
};

struct Polyhedron {
  Eigen::MatrixXd A; // { u : A u <= b }
  Eigen::VectorXd b;
  // Chebyshev-centre-like feasible point found by the construction probe.
  // Reused as the support point for d = 0 and as the Dykstra warm start.
  Eigen::VectorXd inner_point;
};

class InputSet {
public:
  // Factories validate their arguments and throw tissf::Error subtypes on
  // bad data. polyhedron() additionally runs an emptiness probe (Chebyshev
  // LP) and boundedness probes (support values along +/- axes and 16 seeded
  // random directions) and refuses unbounded or empty systems.
  static InputSet ball(double gamma);
  static InputSet box(Eigen::VectorXd lo, Eigen::VectorXd hi);
  static InputSet polyhedron(Eigen::MatrixXd A, Eigen::VectorXd b);

  InputSet() = default; // the unit ball

  // Dimension of the ambient space; -1 for balls, which adapt to the
  // dimension of whatever direction/point they are queried with.
  int dim() const;

  const char* type_name() const;

  template <class Visitor>
  auto visit(Visitor&& v) const {
    return std::visit(std::forward<Visitor>(v), rep_);
  }

private:
  std::variant<Ball, Box, Polyhedron> rep_;
};

// sigma_U(d) = max_{u in U} d.u  (0 for d = 0)
double support_value(const InputSet& set, const Eigen::VectorXd& d);

// A maximiser of d.u over U. Ties are broken deterministically: boxes take
// the hi endpoint where d_i = 0, balls return gamma*d/||d||, polyhedra return
// the Bland's-rule simplex vertex. d = 0 returns a canonical member (ball:
// origin, box: midpoint, polyhedron: the construction probe's inner point).
Eigen::VectorXd support_point(const InputSet& set, const Eigen::VectorXd& d);

// Euclidean projection onto U. Boxes clamp, balls rescale radially,
// polyhedra run Dykstra's alternating projections over the half-spaces
// (tolerance-terminated, iteration cap 10000 -> MaxIterationsError).
Eigen::VectorXd project(const InputSet& set, const Eigen::VectorXd& q,
                        double tol = 1e-9);

// Membership within additive tolerance on each defining inequality.
bool contains(const InputSet& set, const Eigen::VectorXd& u, double tol);

// Maximum violation of the defining inequalities at u (0 when u is a member).
double set_violation(const InputSet& set, const Eigen::VectorXd& u);

// JSON forms:
//   {"type":"ball","gamma":15.0}
//   {"type":"box","lo":[-6.0],"hi":[0.8]}
//   {"type":"polyhedron","A":[[1.0,0.0],...],"b":[...]}
void to_json(nlohmann::json& j, const InputSet& set);
void from_json(const nlohmann::json& j, InputSet& set);
InputSet input_set_from_json(const nlohmann::json& j);

} // namespace tissf
