#include "tissf/barrier.hpp"

#include <cmath>
#include <random>

namespace tissf {

ClassKSpec make_linear_class_k(double a) {
  if (!std::isfinite(a) || a <= 0.0)
    throw Error("class-K slope must be finite and positive");
  return ClassKSpec{a};
}

LieTerms lie_terms(const PlantSpec& plant, const BarrierSpec& barrier,
                   const Eigen::VectorXd& x) {
  if (x.size() != plant.n) throw DimensionError("lie_terms: state has wrong size");
  if (!x.allFinite()) throw NonFiniteError("lie_terms: state contains NaN/inf");
  if (!plant.f || !plant.g || !barrier.h || !barrier.grad_h)
    throw Error("lie_terms: plant or barrier callbacks are unset");

  Eigen::VectorXd f = plant.f(x);
  Eigen::MatrixXd g = plant.g(x);
  Eigen::RowVectorXd grad = barrier.grad_h(x);
  if (f.size() != plant.n || grad.size() != plant.n || g.rows() != plant.n ||
      g.cols() != plant.m)
    throw DimensionError("lie_terms: plant/barrier callback output sizes disagree");

  LieTerms lt;
  lt.c = grad.dot(f) + barrier.alpha(barrier.h(x));
  lt.d = grad * g;
  if (!std::isfinite(lt.c) || !lt.d.allFinite())
    throw NonFiniteError("lie_terms: result contains NaN/inf");
  return lt;
}

Eigen::RowVectorXd fd_gradient(
    const std::function<double(const Eigen::VectorXd&)>& h,
    const Eigen::VectorXd& x, double fd_step) {
  if (!h) throw Error("fd_gradient: h is unset");
  if (fd_step <= 0.0) throw Error("fd_gradient: step must be positive");
  Eigen::RowVectorXd grad(x.size());
  Eigen::VectorXd xp = x, xm = x;
  for (int i = 0; i < x.size(); ++i) {
    double step = fd_step * (1.0 + std::abs(x(i)));
    xp(i) = x(i) + step;
    xm(i) = x(i) - step;
    grad(i) = (h(xp) - h(xm)) / (2.0 * step);
    xp(i) = x(i);
    xm(i) = x(i);
  }
  return grad;
}

double max_gradient_mismatch(const BarrierSpec& barrier,
                             const Eigen::VectorXd& lo,
                             const Eigen::VectorXd& hi, int n_points,
                             std::uint64_t seed) {
  if (lo.size() != hi.size() || lo.size() == 0)
    throw DimensionError("max_gradient_mismatch: bad bounds");
  if (n_points < 1) throw Error("max_gradient_mismatch: need n_points >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  Eigen::VectorXd x(lo.size());
  for (int k = 0; k < n_points; ++k) {
    for (int i = 0; i < x.size(); ++i)
      x(i) = lo(i) + (hi(i) - lo(i)) * unit(rng);
    Eigen::RowVectorXd fd = fd_gradient(barrier.h, x);
    double mism = (barrier.grad_h(x) - fd).norm() / std::max(1.0, fd.norm());
    worst = std::max(worst, mism);
  }
  return worst;
}

} // namespace tissf
