#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "tissf/errors.hpp"

namespace tissf {

// Control-affine plant x' = f(x) + g(x) u.
struct PlantSpec {
  int n = 0; // state dimension
  int m = 0; // input dimension
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> f; // drift, n-vector
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> g; // input matrix, n x m
  std::string label;
};

// Linear class-K function alpha(r) = a*r with a > 0. The only family the
// case studies need; inverse() exists because the robustness margin uses
// -alpha^{-1}(-eps*delta^2/4).
struct ClassKSpec {
  double a = 1.0;
  double operator()(double r) const { return a * r; }
  double inverse(double r) const { return r / a; }
};

ClassKSpec make_linear_class_k(double a); // validates a > 0

// Barrier h with hand-written gradient. Registration (see plants.hpp) checks
// grad_h against central finite differences on random domain points before a
// bundle is handed out.
struct BarrierSpec {
  std::function<double(const Eigen::VectorXd&)> h;
  std::function<Eigen::RowVectorXd(const Eigen::VectorXd&)> grad_h;
  ClassKSpec alpha;
  std::string label;
};

// Matched disturbance w(t) entering through g, with ||w(t)||_inf <= delta.
struct Disturbance {
  double delta = 0.0;
  std::function<Eigen::VectorXd(double)> signal; // null = zero
};

// c(x) = grad_h(x).f(x) + alpha(h(x)),  d(x) = grad_h(x).g(x).
// The barrier-rate decomposition h' = c - alpha(h) + d.(u + w).
struct LieTerms {
  double c = 0.0;
  Eigen::RowVectorXd d;
};

LieTerms lie_terms(const PlantSpec& plant, const BarrierSpec& barrier,
                   const Eigen::VectorXd& x);

// Central finite-difference gradient of h, step fd_step*(1+|x_i|) per axis.
Eigen::RowVectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& h,
                               const Eigen::VectorXd& x, double fd_step = 1e-6);

// Max relative mismatch ||grad_h - fd||/max(1, ||fd||) over n_points uniform
// samples of [lo, hi]. Used at plant registration and by the acceptance
// suite.
double max_gradient_mismatch(const BarrierSpec& barrier,
                             const Eigen::VectorXd& lo,
                             const Eigen::VectorXd& hi, int n_points,
                             std::uint64_t seed);

} // namespace tissf
