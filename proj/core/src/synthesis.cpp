#include "tissf/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace tissf {

namespace {

// Explicit uniform helpers so sampling is reproducible from the seed alone,
// independent of standard-library distribution internals.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void fisher_yates(std::vector<int>& perm, std::mt19937_64& rng) {
  for (size_t i = perm.size(); i > 1; --i)
    std::swap(perm[i - 1], perm[rng() % i]);
}

void validate_domain(const DomainBox& domain) {
  if (domain.lo.size() == 0 || domain.lo.size() != domain.hi.size())
    throw DimensionError("domain bounds must be nonempty and equally sized");
  if (!domain.lo.allFinite() || !domain.hi.allFinite())
    throw NonFiniteError("domain bounds contain NaN/inf");
  for (int i = 0; i < domain.lo.size(); ++i)
    if (domain.lo(i) >= domain.hi(i))
      throw Error("domain must have lo < hi on every axis");
}

Eigen::VectorXd uniform_point(const DomainBox& domain, std::mt19937_64& rng) {
  Eigen::VectorXd x(domain.lo.size());
  for (int i = 0; i < x.size(); ++i)
    x(i) = domain.lo(i) + (domain.hi(i) - domain.lo(i)) * unit_draw(rng);
  return x;
}

double probe_kappa(const DomainBox& domain, const BarrierSpec& barrier,
                   const std::vector<Eigen::VectorXd>& points,
                   std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  const int target = 1000;
  const int max_attempts = target * 200;
  int accepted = 0;
  double worst = 0.0;
  for (int att = 0; att < max_attempts && accepted < target; ++att) {
    Eigen::VectorXd x = uniform_point(domain, rng);
    if (barrier.h(x) < 0.0) continue;
    ++accepted;
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& p : points) nearest = std::min(nearest, (x - p).norm());
    worst = std::max(worst, nearest);
  }
  if (accepted == 0) return std::numeric_limits<double>::quiet_NaN();
  return worst;
}

EtaValue eta_at(const PlantSpec& plant, const BarrierSpec& barrier,
                const InputSet& set, const Eigen::VectorXd& x,
                const Floors& floors) {
  LieTerms lt = lie_terms(plant, barrier, x);
  return eta(lt.c, lt.d, set, floors);
}

std::uint64_t verification_seed(std::uint64_t seed) {
  return seed * 6364136223846793005ull + 1442695040888963407ull;
}

} // namespace

SampleSet sample_covering(const DomainBox& domain, const BarrierSpec& barrier,
                          const SamplePlan& plan, std::uint64_t seed) {
  validate_domain(domain);
  if (!barrier.h) throw Error("sample_covering: barrier.h is unset");
  const int n = static_cast<int>(domain.lo.size());

  SampleSet out;
  out.method = plan.method;

  if (plan.method == SampleMethod::Grid) {
    if (static_cast<int>(plan.grid_counts.size()) != n)
      throw DimensionError("grid_counts must match the domain dimension");
    double diag2 = 0.0;
    for (int a = 0; a < n; ++a) {
      int cnt = plan.grid_counts[a];
      if (cnt < 1) throw Error("grid_counts entries must be >= 1");
      double span = domain.hi(a) - domain.lo(a);
      double spacing = cnt == 1 ? span : span / (cnt - 1);
      diag2 += spacing * spacing;
    }
    out.kappa_nominal = 0.5 * std::sqrt(diag2);

    std::vector<int> idx(n, 0);
    Eigen::VectorXd x(n);
    while (true) {
      for (int a = 0; a < n; ++a) {
        int cnt = plan.grid_counts[a];
        double span = domain.hi(a) - domain.lo(a);
        x(a) = cnt == 1 ? domain.lo(a) + 0.5 * span
                        : domain.lo(a) + span * idx[a] / (cnt - 1);
      }
      if (barrier.h(x) >= 0.0) out.points.push_back(x);
      int a = n - 1;
      while (a >= 0 && ++idx[a] == plan.grid_counts[a]) idx[a--] = 0;
      if (a < 0) break;
    }
  } else {
    if (plan.n_samples < 1) throw Error("LatinHypercube needs n_samples >= 1");
    if (!std::isfinite(plan.kappa) || plan.kappa < 0.0)
      throw Error("LatinHypercube kappa claim must be finite and nonnegative");
    out.kappa_nominal = plan.kappa;

    const int N = plan.n_samples;
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> coords(n, std::vector<double>(N));
    std::vector<int> perm(N);
    for (int a = 0; a < n; ++a) {
      for (int i = 0; i < N; ++i) perm[i] = i;
      fisher_yates(perm, rng);
      double span = domain.hi(a) - domain.lo(a);
      for (int i = 0; i < N; ++i)
        coords[a][i] = domain.lo(a) + span * (perm[i] + unit_draw(rng)) / N;
    }
    Eigen::VectorXd x(n);
    for (int i = 0; i < N; ++i) {
      for (int a = 0; a < n; ++a) x(a) = coords[a][i];
      if (barrier.h(x) >= 0.0) out.points.push_back(x);
    }
  }

  if (out.points.empty())
    throw EmptySampleSetError("no sample satisfied h >= 0");
  out.kappa_effective = probe_kappa(domain, barrier, out.points, seed);
  return out;
}

LipschitzEstimates estimate_lipschitz(
    const PlantSpec& plant, const BarrierSpec& barrier, const InputSet& set,
    const std::vector<Eigen::VectorXd>& samples, double fd_step,
    const Floors& floors) {
  if (fd_step <= 0.0) throw Error("estimate_lipschitz: step must be positive");
  LipschitzEstimates est;
  est.method = LipschitzMethod::GradientMax;
  int eta_contributors = 0;
  for (const auto& x : samples) {
    est.L_h = std::max(est.L_h, fd_gradient(barrier.h, x, fd_step).norm());

    Eigen::RowVectorXd grad_eta(x.size());
    bool ok = true;
    Eigen::VectorXd xp = x, xm = x;
    for (int i = 0; i < x.size() && ok; ++i) {
      double step = fd_step * (1.0 + std::abs(x(i)));
      xp(i) = x(i) + step;
      xm(i) = x(i) - step;
      EtaValue ep = eta_at(plant, barrier, set, xp, floors);
      EtaValue em = eta_at(plant, barrier, set, xm, floors);
      if (!ep.ok() || !em.ok())
        ok = false;
      else
        grad_eta(i) = (ep.value - em.value) / (2.0 * step);
      xp(i) = x(i);
      xm(i) = x(i);
    }
    if (ok) {
      est.L_eta = std::max(est.L_eta, grad_eta.norm());
      ++eta_contributors;
    }
  }
  if (eta_contributors == 0)
    throw AllDegenerateError(
        "no sample admitted a finite-difference eta gradient");
  return est;
}

LipschitzEstimates prescribed_lipschitz(double L_h, double L_eta) {
  if (!std::isfinite(L_h) || !std::isfinite(L_eta) || L_h < 0.0 || L_eta < 0.0)
    throw Error("prescribed Lipschitz constants must be finite and nonnegative");
  return LipschitzEstimates{L_h, L_eta, LipschitzMethod::Prescribed};
}

std::vector<Constraint2d> assemble_constraints(
    const std::vector<double>& h_values, const std::vector<double>& eta_values,
    const LipschitzEstimates& lipschitz, double kappa, double lambda_min) {
  if (h_values.size() != eta_values.size())
    throw DimensionError("assemble_constraints: h/eta lists differ in length");
  if (!std::isfinite(kappa) || kappa < 0.0)
    throw Error("assemble_constraints: kappa must be finite and nonnegative");
  if (lambda_min <= 0.0) throw Error("assemble_constraints: lambda_min must be positive");
  std::vector<Constraint2d> cs;
  cs.reserve(h_values.size() + 1);
  for (size_t i = 0; i < h_values.size(); ++i)
    cs.push_back({1.0, h_values[i] - lipschitz.L_h * kappa,
                  eta_values[i] + lipschitz.L_eta * kappa});
  cs.push_back({0.0, 1.0, lambda_min});
  return cs;
}

TuningLpResult synthesize(const DomainBox& domain, const PlantSpec& plant,
                          const BarrierSpec& barrier, const InputSet& set,
                          const SynthesisConfig& config) {
  if (!std::isfinite(config.rho) || config.rho < 0.0)
    throw Error("synthesize: rho must be finite and nonnegative");

  TuningLpResult result;
  result.samples = sample_covering(domain, barrier, config.plan, config.seed);

  std::vector<double> h_vals, eta_vals;
  std::vector<Eigen::VectorXd> kept_points;
  for (const auto& x : result.samples.points) {
    EtaValue ev = eta_at(plant, barrier, set, x, config.floors);
    if (!ev.ok()) {
      result.samples.rejected.emplace_back(x, ev.degenerate);
      continue;
    }
    h_vals.push_back(barrier.h(x));
    eta_vals.push_back(ev.value);
    kept_points.push_back(x);
  }
  if (kept_points.empty())
    throw AllDegenerateError("every sample hit a degeneracy floor");
  result.exclusion_warning =
      result.samples.rejected.size() >
      0.2 * static_cast<double>(result.samples.points.size());
  // Degenerate states live only in `rejected` from here on: `points` is the
  // kept set, so constraint row i corresponds to points[i] exactly.
  result.samples.points = kept_points;

  result.lipschitz =
      config.prescribed_lipschitz
          ? prescribed_lipschitz(config.prescribed_lipschitz->first,
                                 config.prescribed_lipschitz->second)
          : estimate_lipschitz(plant, barrier, set, kept_points,
                               config.fd_step, config.floors);

  std::vector<Constraint2d> constraints =
      assemble_constraints(h_vals, eta_vals, result.lipschitz,
                           result.samples.kappa_nominal, config.lambda_min);
  result.n_constraints = static_cast<int>(constraints.size());

  LpSolution sol = solve_2d(constraints, Eigen::Vector2d(1.0, config.rho));
  switch (sol.status) {
    case LpStatus::Optimal:
      result.status = TuningStatus::Optimal;
      break;
    case LpStatus::Infeasible:
      result.status = TuningStatus::Infeasible;
      return result;
    case LpStatus::Unbounded:
      result.status = TuningStatus::Unbounded;
      return result;
  }
  result.params = make_tuning_params(sol.x(0), sol.x(1), config.lambda_min);
  for (int row : sol.active_rows)
    if (row < static_cast<int>(kept_points.size()))
      result.active_samples.push_back(row);

  // Independent check on a 10x denser uniform sample of C.
  long plan_count = config.plan.method == SampleMethod::Grid ? 1
                                                             : config.plan.n_samples;
  if (config.plan.method == SampleMethod::Grid)
    for (int cnt : config.plan.grid_counts) plan_count *= cnt;
  const long target = 10 * plan_count;
  std::mt19937_64 rng(verification_seed(config.seed));
  std::vector<Eigen::VectorXd> ver_points;
  ver_points.reserve(target);
  const long max_attempts = target * 200;
  for (long att = 0; att < max_attempts &&
                     static_cast<long>(ver_points.size()) < target; ++att) {
    Eigen::VectorXd x = uniform_point(domain, rng);
    if (barrier.h(x) >= 0.0) ver_points.push_back(x);
  }
  VerificationReport rep = verify_compatibility(result.params, plant, barrier,
                                                set, ver_points, config.floors);
  result.min_margin = rep.min_margin;
  result.worst_state = rep.worst_state;
  result.verification_violations = static_cast<int>(rep.violations.size());
  result.n_verification = rep.n_checked;
  return result;
}

VerificationReport verify_compatibility(
    const TuningParams& params, const PlantSpec& plant,
    const BarrierSpec& barrier, const InputSet& set,
    const std::vector<Eigen::VectorXd>& samples, const Floors& floors) {
  VerificationReport rep;
  rep.min_margin = std::numeric_limits<double>::quiet_NaN();
  for (const auto& x : samples) {
    EtaValue ev = eta_at(plant, barrier, set, x, floors);
    if (!ev.ok()) {
      ++rep.n_degenerate;
      continue;
    }
    double margin = params.ln_eps0 + params.lambda * barrier.h(x) - ev.value;
    if (rep.n_checked == 0 || margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.worst_state = x;
    }
    if (margin < 0.0) rep.violations.push_back(x);
    ++rep.n_checked;
  }
  return rep;
}

} // namespace tissf
