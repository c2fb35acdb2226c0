#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tissf/synthesis.hpp"

namespace tissf {

// Everything a scenario needs about one case study, bundled. Barrier and
// plant registration is code-level; scenario configs refer to bundles by
// label. Gradient correctness of grad_h is checked against finite
// differences when a bundle is first built.
struct PlantBundle {
  PlantSpec plant;
  BarrierSpec barrier;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> nominal; // k_nom(x)
  Disturbance disturbance;
  InputSet input_set;
  DomainBox domain;     // default synthesis/verification domain
  Eigen::VectorXd x0;   // default initial state
  // Exogenous time-driven drift added to x' (null = none). The cruise
  // plant routes the lead vehicle's acceleration through here, and the
  // simulator also credits it to the barrier-rate term c since the lead's
  // motion is broadcast to the controller.
  std::function<Eigen::VectorXd(double)> drift;
  // Exact state overrides applied at stage and step times (null = none).
  // The cruise plant pins the lead velocity to its closed-form profile so
  // the post-stop value is exactly zero.
  std::function<void(double, Eigen::VectorXd&)> prescribe;
};

// Registered bundles: "example1" (double integrator with h = x1 - x2) and
// "ccc" (connected cruise control). Throws Error for unknown labels.
const PlantBundle& get_plant(const std::string& label);
std::vector<std::string> plant_labels();

// Lead-vehicle profile for the cruise study: 15 m/s until t = 5 s, then
// -4 m/s^2 to a standstill (reached at t = 8.75 s), exactly 0 afterwards.
// Returns (v_L, a_L).
std::pair<double, double> lead_velocity(double t);

// Quadratic safe-headway policy hhat(v, v_L); the barrier is D - hhat.
double ccc_safe_headway(double v, double v_L);

// Range policy V_D = min(max(0, 0.7*(D - 7)), 20) used by the nominal
// cruise controller.
double ccc_desired_speed(double D);

enum class ControllerKind {
  LpQpFilter,         // QP filter with LP-synthesized tuning
  BaselineFixedForm,  // u = k_nom + d^T/eps(h), no input clipping
  BaselineSaturated,  // the fixed-form law projected onto the input set
  TrialParams,        // QP filter with user-supplied tuning
};

struct ControllerVariant {
  ControllerKind kind = ControllerKind::LpQpFilter;
  TuningParams params;
  std::string name; // used in output file names for batch runs
};

} // namespace tissf
