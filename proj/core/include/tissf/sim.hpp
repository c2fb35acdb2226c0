#pragma once

#include <iosfwd>
#include <memory>
#include <nlohmann/json.hpp>

#include "tissf/plants.hpp"
#include "tissf/qp_filter.hpp"

namespace tissf {

struct ScenarioConfig {
  std::string plant_label;
  ControllerVariant controller;
  Eigen::VectorXd x0;     // empty = bundle default
  double t_end = 10.0;
  double dt = 1e-3;
  ClassKSpec alpha;       // class-K gain used by this scenario's barrier
  int record_every = 1;
  double qp_tol = 1e-10;
};

enum class QpLogStatus { None, Optimal, Infeasible };

struct TrajectoryRecord {
  double t = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd u;      // input applied over [t, t+dt)
  double h = 0.0;
  double h_plus_zeta = 0.0;
  double c = 0.0;
  Eigen::RowVectorXd d;
  double eps = 0.0;
  QpLogStatus qp_status = QpLogStatus::None;
  double mu = 0.0;
  double tissf_slack = 0.0;
};

struct TrajectorySummary {
  double min_h = 0.0;
  double min_h_plus_zeta = 0.0;
  Eigen::VectorXd max_abs_u; // per input component
  long input_violations = 0; // records with u outside the input set (tol 1e-6)
  long qp_infeasible = 0;
  long n_records = 0;
  bool completed = true;     // false when the run aborted early
  double t_final = 0.0;
};

struct TrajectoryLog {
  std::vector<TrajectoryRecord> records;
  TrajectorySummary summary;
};

// Summary fields recomputed from the records (the summary carries no
// information of its own).
TrajectorySummary summarize(const std::vector<TrajectoryRecord>& records,
                            const InputSet& set);

// The QP certified infeasibility at run time: the scenario cannot continue.
struct ScenarioFailureError : Error {
  ScenarioFailureError(const std::string& what, double t, Eigen::VectorXd x,
                       std::shared_ptr<TrajectoryLog> partial)
      : Error(what), t(t), x(std::move(x)), partial(std::move(partial)) {}
  double t;
  Eigen::VectorXd x;
  std::shared_ptr<TrajectoryLog> partial; // records up to and including the failure
};

// Integration produced NaN or infinity; the partial log is preserved.
struct NonFiniteStateError : Error {
  NonFiniteStateError(const std::string& what, double t,
                      std::shared_ptr<TrajectoryLog> partial)
      : Error(what), t(t), partial(std::move(partial)) {}
  double t;
  std::shared_ptr<TrajectoryLog> partial;
};

// Fixed-step classical RK4 under a zero-order-hold controller: u is computed
// once per step, the disturbance and any exogenous drift are evaluated at
// the RK4 stage times. Records step 0 and every record_every-th step after
// it: floor(t_end/dt/record_every) + 1 records. Bitwise deterministic.
TrajectoryLog run_scenario(const PlantBundle& bundle,
                           const ScenarioConfig& config);
TrajectoryLog run_scenario(const ScenarioConfig& config); // resolves plant_label

struct ConvergencePoint {
  double dt = 0.0;
  double error = 0.0; // ||x(t_end; dt) - x(t_end; dt_finest)||_2
};

// Terminal-state self-convergence: reruns the scenario at each step size and
// reports deltas against the finest. Needs at least two entries; returns
// points sorted by decreasing dt (the finest has error 0 by construction).
std::vector<ConvergencePoint> convergence_probe(const PlantBundle& bundle,
                                                const ScenarioConfig& config,
                                                std::vector<double> dts);

// CSV with the fixed header
//   t,x1..xn,u1..um,h,h_plus_zeta,c,eps,qp_status,mu,slack
// and all floating-point fields printed with %.17g.
void write_trajectory_csv(std::ostream& os, const TrajectoryLog& log);

void to_json(nlohmann::json& j, const TrajectorySummary& s);

const char* qp_log_status_name(QpLogStatus s);

} // namespace tissf
