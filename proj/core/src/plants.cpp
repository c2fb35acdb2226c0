#include "tissf/plants.hpp"

#include <cmath>
#include <map>

namespace tissf {

namespace {

// Safe-distance policy coefficients (suffix _c keeps them apart from the
// compatibility eta, margin zeta and perturbation omega).
constexpr double kDsf = 2.0, kTheta = 1.1, kEtaC = 0.6;
constexpr double kXi = 0.03, kZetaC = -0.03, kOmegaC = -0.03;
constexpr double kK1 = 0.85, kK2 = 0.75;       // nominal gains
constexpr double kLeadV0 = 15.0, kLeadBrake = -4.0, kBrakeStart = 5.0;

Eigen::VectorXd scalar_vec(double v) {
  Eigen::VectorXd u(1);
  u(0) = v;
  return u;
}

PlantBundle build_example1() {
  PlantBundle b;
  b.plant.n = 2;
  b.plant.m = 1;
  b.plant.label = "example1";
  b.plant.f = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd f(2);
    f << -x(1), 0.0;
    return f;
  };
  b.plant.g = [](const Eigen::VectorXd&) {
    Eigen::MatrixXd g(2, 1);
    g << 0.0, 1.0;
    return g;
  };

  b.barrier.label = "x1 - x2";
  b.barrier.h = [](const Eigen::VectorXd& x) { return x(0) - x(1); };
  b.barrier.grad_h = [](const Eigen::VectorXd&) {
    Eigen::RowVectorXd g(2);
    g << 1.0, -1.0;
    return g;
  };
  b.barrier.alpha = make_linear_class_k(1.0);

  b.nominal = [](const Eigen::VectorXd& x) {
    return scalar_vec(x(0) - 2.0 * x(1) - 1.0);
  };
  b.disturbance.delta = 3.0;
  b.disturbance.signal = [](double t) { return scalar_vec(3.0 * std::sin(t)); };
  b.input_set = InputSet::box(scalar_vec(-15.0), scalar_vec(15.0));

  b.domain.lo = Eigen::Vector2d(-5.0, -5.0);
  b.domain.hi = Eigen::Vector2d(5.0, 5.0);
  b.x0 = Eigen::Vector2d(5.0, 0.0);
  return b;
}

PlantBundle build_ccc() {
  PlantBundle b;
  b.plant.n = 3;
  b.plant.m = 1;
  b.plant.label = "ccc";
  // State (D, v, v_L). The lead acceleration is exogenous and time-driven;
  // it enters through the bundle's drift term, so the state-only dynamics
  // hold the lead speed constant.
  b.plant.f = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd f(3);
    f << x(2) - x(1), 0.0, 0.0;
    return f;
  };
  b.plant.g = [](const Eigen::VectorXd&) {
    Eigen::MatrixXd g(3, 1);
    g << 0.0, 1.0, 0.0;
    return g;
  };

  b.barrier.label = "D - hhat(v, vL)";
  b.barrier.h = [](const Eigen::VectorXd& x) {
    return x(0) - ccc_safe_headway(x(1), x(2));
  };
  b.barrier.grad_h = [](const Eigen::VectorXd& x) {
    Eigen::RowVectorXd g(3);
    g << 1.0, -(kTheta + 2.0 * kXi * x(1) + kZetaC * x(2)),
        -(kEtaC + kZetaC * x(1) + 2.0 * kOmegaC * x(2));
    return g;
  };
  b.barrier.alpha = make_linear_class_k(1.0);

  b.nominal = [](const Eigen::VectorXd& x) {
    return scalar_vec(kK1 * (ccc_desired_speed(x(0)) - x(1)) +
                      kK2 * (x(2) - x(1)));
  };
  b.disturbance.delta = 1.2;
  b.disturbance.signal = [](double) { return scalar_vec(1.2); };
  b.input_set = InputSet::box(scalar_vec(-6.0), scalar_vec(0.8));

  b.domain.lo = Eigen::Vector3d(0.0, 0.0, 0.0);
  b.domain.hi = Eigen::Vector3d(60.0, 20.0, 20.0);
  b.x0 = Eigen::Vector3d(40.0, 15.0, 15.0);

  b.drift = [](double t) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(3);
    d(2) = lead_velocity(t).second;
    return d;
  };
  b.prescribe = [](double t, Eigen::VectorXd& x) {
    x(2) = lead_velocity(t).first;
  };
  return b;
}

void check_gradient(const PlantBundle& b) {
  double mismatch =
      max_gradient_mismatch(b.barrier, b.domain.lo, b.domain.hi, 200, 42);
  if (mismatch > 1e-5)
    throw Error("plant '" + b.plant.label +
                "': hand-written gradient disagrees with finite differences");
}

const std::map<std::string, PlantBundle>& registry() {
  static const std::map<std::string, PlantBundle> reg = [] {
    std::map<std::string, PlantBundle> r;
    r.emplace("example1", build_example1());
    r.emplace("ccc", build_ccc());
    for (const auto& [label, bundle] : r) check_gradient(bundle);
    return r;
  }();
  return reg;
}

} // namespace

const PlantBundle& get_plant(const std::string& label) {
  const auto& reg = registry();
  auto it = reg.find(label);
  if (it == reg.end()) throw Error("unknown plant label: " + label);
  return it->second;
}

std::vector<std::string> plant_labels() {
  std::vector<std::string> labels;
  for (const auto& [label, bundle] : registry()) labels.push_back(label);
  return labels;
}

std::pair<double, double> lead_velocity(double t) {
  if (t < kBrakeStart) return {kLeadV0, 0.0};
  double v = kLeadV0 + kLeadBrake * (t - kBrakeStart);
  if (v <= 0.0) return {0.0, 0.0};
  return {v, kLeadBrake};
}

double ccc_safe_headway(double v, double v_L) {
  return kDsf + kTheta * v + kEtaC * v_L + kXi * v * v + kZetaC * v * v_L +
         kOmegaC * v_L * v_L;
}

double ccc_desired_speed(double D) {
  return std::min(std::max(0.0, 0.7 * (D - 7.0)), 20.0);
}

} // namespace tissf
