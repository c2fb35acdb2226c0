#include "tissf/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "tissf/tuning.hpp"

namespace tissf {

namespace {

struct StepEval {
  Eigen::VectorXd u;
  double h = 0.0, zeta = 0.0, c_eff = 0.0, eps = 0.0;
  Eigen::RowVectorXd d;
  QpLogStatus status = QpLogStatus::None;
  double mu = 0.0, slack = 0.0;
};

TrajectoryRecord make_record(double t, const Eigen::VectorXd& x,
                             const StepEval& ev) {
  TrajectoryRecord r;
  r.t = t;
  r.x = x;
  r.u = ev.u;
  r.h = ev.h;
  r.h_plus_zeta = ev.h + ev.zeta;
  r.c = ev.c_eff;
  r.d = ev.d;
  r.eps = ev.eps;
  r.qp_status = ev.status;
  r.mu = ev.mu;
  r.tissf_slack = ev.slack;
  return r;
}

void print_g17(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

} // namespace

TrajectorySummary summarize(const std::vector<TrajectoryRecord>& records,
                            const InputSet& set) {
  TrajectorySummary s;
  s.n_records = static_cast<long>(records.size());
  if (records.empty()) {
    s.min_h = std::numeric_limits<double>::quiet_NaN();
    s.min_h_plus_zeta = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  s.min_h = std::numeric_limits<double>::infinity();
  s.min_h_plus_zeta = std::numeric_limits<double>::infinity();
  s.max_abs_u = Eigen::VectorXd::Zero(records.front().u.size());
  for (const auto& r : records) {
    s.min_h = std::min(s.min_h, r.h);
    s.min_h_plus_zeta = std::min(s.min_h_plus_zeta, r.h_plus_zeta);
    s.max_abs_u = s.max_abs_u.cwiseMax(r.u.cwiseAbs());
    if (set_violation(set, r.u) > 1e-6) ++s.input_violations;
    if (r.qp_status == QpLogStatus::Infeasible) ++s.qp_infeasible;
  }
  s.t_final = records.back().t;
  return s;
}

TrajectoryLog run_scenario(const PlantBundle& bundle,
                           const ScenarioConfig& config) {
  if (config.dt <= 0.0 || !std::isfinite(config.dt))
    throw Error("run_scenario: dt must be finite and positive");
  if (!std::isfinite(config.t_end) || config.t_end < config.dt)
    throw Error("run_scenario: t_end must satisfy t_end >= dt");
  if (config.record_every < 1)
    throw Error("run_scenario: record_every must be >= 1");

  const PlantSpec& plant = bundle.plant;
  BarrierSpec barrier = bundle.barrier;
  barrier.alpha = config.alpha;

  Eigen::VectorXd x = config.x0.size() ? config.x0 : bundle.x0;
  if (x.size() != plant.n)
    throw DimensionError("run_scenario: x0 size disagrees with the plant");
  if (!x.allFinite()) throw NonFiniteError("run_scenario: x0 contains NaN/inf");

  const ControllerKind kind = config.controller.kind;
  // Revalidate: the params may have been aggregate-initialized.
  const TuningParams params = make_tuning_params(config.controller.params.ln_eps0,
                                                 config.controller.params.lambda,
                                                 config.controller.params.lambda_min);
  const double delta = bundle.disturbance.delta;
  auto noise = [&](double t) -> Eigen::VectorXd {
    if (bundle.disturbance.signal) return bundle.disturbance.signal(t);
    return Eigen::VectorXd::Zero(plant.m);
  };

  const long steps = static_cast<long>(std::floor(config.t_end / config.dt + 1e-9));
  const double dt = config.dt;

  auto log = std::make_shared<TrajectoryLog>();
  log->records.reserve(static_cast<size_t>(steps / config.record_every) + 2);

  auto evaluate = [&](double t, const Eigen::VectorXd& xs) {
    StepEval ev;
    ev.h = barrier.h(xs);
    LieTerms lt = lie_terms(plant, barrier, xs);
    ev.d = lt.d;
    ev.c_eff = lt.c;
    // Exogenous drift is broadcast (the controller knows it), so it is
    // credited to the barrier-rate term the filter enforces.
    if (bundle.drift) ev.c_eff += barrier.grad_h(xs).dot(bundle.drift(t));
    ev.eps = epsilon(params, ev.h).value;
    ev.zeta = robustness_margin(params, config.alpha, ev.h, delta);
    const double rhs = lt.d.squaredNorm() / ev.eps - ev.c_eff;

    switch (kind) {
      case ControllerKind::BaselineFixedForm:
      case ControllerKind::BaselineSaturated: {
        ev.u = bundle.nominal(xs) + lt.d.transpose() / ev.eps;
        if (kind == ControllerKind::BaselineSaturated)
          ev.u = project(bundle.input_set, ev.u);
        ev.status = QpLogStatus::None;
        ev.slack = lt.d.dot(ev.u) - rhs;
        break;
      }
      case ControllerKind::LpQpFilter:
      case ControllerKind::TrialParams: {
        QpInstance qp{bundle.nominal(xs), lt.d, rhs, bundle.input_set};
        QpResult res = solve_safety_qp(qp, config.qp_tol);
        ev.u = res.u_star;
        ev.mu = res.mu;
        ev.slack = res.tissf_slack;
        ev.status = res.status == QpStatus::Optimal ? QpLogStatus::Optimal
                                                    : QpLogStatus::Infeasible;
        break;
      }
    }
    if (!ev.u.allFinite()) {
      log->summary = summarize(log->records, bundle.input_set);
      log->summary.completed = false;
      log->summary.t_final = t;
      throw NonFiniteStateError("controller produced a non-finite input", t, log);
    }
    return ev;
  };

  auto dynamics = [&](double tau, const Eigen::VectorXd& xs,
                      const Eigen::VectorXd& u) {
    Eigen::VectorXd dx = plant.f(xs) + plant.g(xs) * (u + noise(tau));
    if (bundle.drift) dx += bundle.drift(tau);
    return dx;
  };

  if (bundle.prescribe) bundle.prescribe(0.0, x);
  for (long k = 0;; ++k) {
    const double t = k * dt;
    StepEval ev;
    try {
      ev = evaluate(t, x);
    } catch (const NonFiniteError& e) {
      // The state is still finite but barrier/controller arithmetic overflowed
      // (e.g. f(x) past the double range): same failure class as a non-finite
      // state, and the partial log must survive.
      log->summary = summarize(log->records, bundle.input_set);
      log->summary.completed = false;
      log->summary.t_final = t;
      throw NonFiniteStateError(e.what(), t, log);
    }

    if (k % config.record_every == 0)
      log->records.push_back(make_record(t, x, ev));

    if (ev.status == QpLogStatus::Infeasible) {
      log->summary = summarize(log->records, bundle.input_set);
      log->summary.completed = false;
      log->summary.t_final = t;
      throw ScenarioFailureError("safety QP certified infeasibility", t, x, log);
    }
    if (k == steps) break;

    const Eigen::VectorXd k1 = dynamics(t, x, ev.u);
    const Eigen::VectorXd k2 = dynamics(t + 0.5 * dt, x + 0.5 * dt * k1, ev.u);
    const Eigen::VectorXd k3 = dynamics(t + 0.5 * dt, x + 0.5 * dt * k2, ev.u);
    const Eigen::VectorXd k4 = dynamics(t + dt, x + dt * k3, ev.u);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (bundle.prescribe) bundle.prescribe((k + 1) * dt, x);

    if (!x.allFinite()) {
      log->summary = summarize(log->records, bundle.input_set);
      log->summary.completed = false;
      log->summary.t_final = (k + 1) * dt;
      throw NonFiniteStateError("state left the finite domain", (k + 1) * dt, log);
    }
  }

  log->summary = summarize(log->records, bundle.input_set);
  log->summary.completed = true;
  log->summary.t_final = steps * dt;
  return std::move(*log);
}

TrajectoryLog run_scenario(const ScenarioConfig& config) {
  return run_scenario(get_plant(config.plant_label), config);
}

std::vector<ConvergencePoint> convergence_probe(const PlantBundle& bundle,
                                                const ScenarioConfig& config,
                                                std::vector<double> dts) {
  if (dts.size() < 2) throw Error("convergence probe needs at least two step sizes");
  for (double dt : dts) {
    if (dt <= 0.0 || dt > config.t_end)
      throw Error("convergence probe: step sizes must lie in (0, t_end]");
    double ratio = config.t_end / dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9)
      throw Error("convergence probe: t_end must be a multiple of every dt");
  }
  std::sort(dts.begin(), dts.end(), std::greater<double>());

  std::vector<Eigen::VectorXd> finals;
  for (double dt : dts) {
    ScenarioConfig c = config;
    c.dt = dt;
    c.record_every = 1; // guarantees the terminal state is the last record
    finals.push_back(run_scenario(bundle, c).records.back().x);
  }
  std::vector<ConvergencePoint> out;
  for (size_t i = 0; i < dts.size(); ++i)
    out.push_back({dts[i], (finals[i] - finals.back()).norm()});
  return out;
}

void write_trajectory_csv(std::ostream& os, const TrajectoryLog& log) {
  if (log.records.empty()) throw Error("cannot write an empty trajectory");
  const int n = static_cast<int>(log.records.front().x.size());
  const int m = static_cast<int>(log.records.front().u.size());
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  for (int j = 1; j <= m; ++j) os << ",u" << j;
  os << ",h,h_plus_zeta,c,eps,qp_status,mu,slack\n";
  for (const auto& r : log.records) {
    print_g17(os, r.t);
    for (int i = 0; i < n; ++i) {
      os << ',';
      print_g17(os, r.x(i));
    }
    for (int j = 0; j < m; ++j) {
      os << ',';
      print_g17(os, r.u(j));
    }
    os << ',';
    print_g17(os, r.h);
    os << ',';
    print_g17(os, r.h_plus_zeta);
    os << ',';
    print_g17(os, r.c);
    os << ',';
    print_g17(os, r.eps);
    os << ',' << qp_log_status_name(r.qp_status) << ',';
    print_g17(os, r.mu);
    os << ',';
    print_g17(os, r.tissf_slack);
    os << '\n';
  }
}

void to_json(nlohmann::json& j, const TrajectorySummary& s) {
  j = nlohmann::json{
      {"min_h", s.min_h},
      {"min_h_plus_zeta", s.min_h_plus_zeta},
      {"max_abs_u", std::vector<double>(s.max_abs_u.begin(), s.max_abs_u.end())},
      {"input_violations", s.input_violations},
      {"qp_infeasible", s.qp_infeasible},
      {"n_records", s.n_records},
      {"completed", s.completed},
      {"t_final", s.t_final},
  };
}

const char* qp_log_status_name(QpLogStatus s) {
  switch (s) {
    case QpLogStatus::None: return "none";
    case QpLogStatus::Optimal: return "optimal";
    case QpLogStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

} // namespace tissf
