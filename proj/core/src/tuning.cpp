#include "tissf/tuning.hpp"

#include <cmath>

namespace tissf {

namespace {
constexpr double kEpsilonCeiling = 1e300;
}

TuningParams make_tuning_params(double ln_eps0, double lambda,
                                double lambda_min) {
  if (!std::isfinite(ln_eps0) || !std::isfinite(lambda) ||
      !std::isfinite(lambda_min))
    throw NonFiniteError("tuning parameters contain NaN/inf");
  if (lambda_min <= 0.0) throw Error("lambda_min must be positive");
  if (lambda < lambda_min) throw Error("lambda must be >= lambda_min");
  return TuningParams{ln_eps0, lambda, lambda_min};
}

EpsilonValue epsilon(const TuningParams& params, double h) {
  if (!std::isfinite(h)) throw NonFiniteError("epsilon: h contains NaN/inf");
  double value = std::exp(params.ln_eps0 + params.lambda * h);
  if (value > kEpsilonCeiling) return {kEpsilonCeiling, true};
  return {value, false};
}

std::optional<double> compatibility_bound(double c, const Eigen::RowVectorXd& d,
                                          const InputSet& set) {
  if (!std::isfinite(c) || !d.allFinite())
    throw NonFiniteError("compatibility_bound: inputs contain NaN/inf");
  double d2 = d.squaredNorm();
  if (d2 == 0.0) {
    if (c >= 0.0) return 0.0;
    return std::nullopt;
  }
  double s = c + support_value(set, d.transpose());
  if (s <= 0.0) return std::nullopt;
  return d2 / s;
}

EtaValue eta(double c, const Eigen::RowVectorXd& d, const InputSet& set,
             const Floors& floors) {
  if (!std::isfinite(c) || !d.allFinite())
    throw NonFiniteError("eta: inputs contain NaN/inf");
  EtaValue out;
  double nrm = d.norm();
  if (nrm < floors.d_min) {
    out.degenerate = DegeneracyReason::GradientFloor;
    return out;
  }
  double s = c + support_value(set, d.transpose());
  if (s < floors.s_min) {
    out.degenerate = DegeneracyReason::SupportSumFloor;
    return out;
  }
  out.value = std::log(d.squaredNorm()) - std::log(s);
  return out;
}

double robustness_margin(const TuningParams& params, const ClassKSpec& alpha,
                         double h, double delta) {
  if (!std::isfinite(delta) || delta < 0.0)
    throw Error("robustness_margin: delta must be finite and nonnegative");
  double eps = epsilon(params, h).value;
  return -alpha.inverse(-eps * delta * delta / 4.0);
}

HalfspaceRow tissf_halfspace(const PlantSpec& plant, const BarrierSpec& barrier,
                             const TuningParams& params,
                             const Eigen::VectorXd& x) {
  LieTerms lt = lie_terms(plant, barrier, x);
  EpsilonValue eps = epsilon(params, barrier.h(x));
  HalfspaceRow row;
  row.d = lt.d;
  row.rhs = lt.d.squaredNorm() / eps.value - lt.c;
  if (!std::isfinite(row.rhs))
    throw NonFiniteError("tissf_halfspace: rhs is not finite (epsilon underflow?)");
  return row;
}

} // namespace tissf
