#pragma once

#include <optional>

#include "tissf/barrier.hpp"
#include "tissf/convex_sets.hpp"

namespace tissf {

// Exponential tuning schedule eps(h) = eps0 * exp(lambda*h), stored in log
// form so the synthesis LP is affine in the decision variables.
struct TuningParams {
  double ln_eps0 = 0.0;
  double lambda = 0.0;     // must satisfy lambda >= lambda_min > 0
  double lambda_min = 0.0;
};

TuningParams make_tuning_params(double ln_eps0, double lambda,
                                double lambda_min); // validates the ordering

struct EpsilonValue {
  double value = 0.0;
  bool clamped = false; // overflow guard engaged (value held at 1e300)
};

EpsilonValue epsilon(const TuningParams& params, double h);

// Smallest eps for which the constraint d.u >= ||d||^2/eps - c intersects U
// (support value sigma = sigma_U(d)):
//   ||d|| = 0:  0 when c >= 0, nothing otherwise
//   c+sigma > 0: ||d||^2 / (c+sigma)
//   c+sigma <= 0: nothing — no finite tuning restores feasibility here.
// "Nothing" (nullopt) means the nominal problem is incompatible at this
// state; it is an expected analysis outcome, not an exception.
std::optional<double> compatibility_bound(double c, const Eigen::RowVectorXd& d,
                                          const InputSet& set);

// Numerical floors under which eta is not evaluated. Samples below either
// floor are excluded from synthesis and reported, never silently used.
struct Floors {
  double d_min = 1e-6; // lower bound on ||d||
  double s_min = 1e-6; // lower bound on c + sigma
};

enum class DegeneracyReason { None, GradientFloor, SupportSumFloor };

struct EtaValue {
  double value = 0.0;
  DegeneracyReason degenerate = DegeneracyReason::None;
  bool ok() const { return degenerate == DegeneracyReason::None; }
};

// eta(x) = ln||d||^2 - ln(c + sigma): the log of the compatibility bound,
// the quantity the sampled tuning constraints must dominate.
EtaValue eta(double c, const Eigen::RowVectorXd& d, const InputSet& set,
             const Floors& floors = {});

// zeta(h, delta) = -alpha^{-1}(-eps(h)*delta^2/4); for linear alpha this is
// eps(h)*delta^2/(4a). The amount by which the safe set inflates under a
// matched disturbance of sup-norm delta.
double robustness_margin(const TuningParams& params, const ClassKSpec& alpha,
                         double h, double delta);

// The pointwise input constraint the safety filter enforces:
//   d(x).u >= ||d(x)||^2 / eps(h(x)) - c(x).
struct HalfspaceRow {
  Eigen::RowVectorXd d;
  double rhs = 0.0;
};

HalfspaceRow tissf_halfspace(const PlantSpec& plant, const BarrierSpec& barrier,
                             const TuningParams& params,
                             const Eigen::VectorXd& x);

} // namespace tissf
