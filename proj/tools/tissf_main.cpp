// tissf: offline tuning synthesis, closed-loop simulation, compatibility
// verification, and support-function inspection, driven by JSON configs.
//
// Exit codes (stable contract):
//   0 success
//   1 config / schema error
//   2 tuning LP found no optimum (infeasible or unbounded)
//   3 empty or fully degenerate sample set
//   4 scenario aborted: safety QP certified infeasibility
//   5 scenario aborted: non-finite state
//   6 verification found compatibility violations

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <tissf/sim.hpp>
#include <tissf/synthesis.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tissf;

namespace {

// ---------------------------------------------------------------- logging

int g_log_level = 2; // 0 error, 1 warn, 2 info, 3 debug

void log_msg(int level, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (level <= g_log_level)
    std::cerr << "[" << names[level] << "] " << msg << "\n";
}

int parse_log_level(const std::string& name) {
  if (name == "error") return 0;
  if (name == "warn") return 1;
  if (name == "info") return 2;
  if (name == "debug") return 3;
  throw CLI::ValidationError("--log-level must be error|warn|info|debug");
}

// ------------------------------------------------------- config utilities

// Raised for malformed configs; mapped to exit 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  return j;
}

const json& require_field(const json& j, const char* key, const char* ctx) {
  auto it = j.find(key);
  if (it == j.end())
    throw ConfigError(std::string(ctx) + ": missing required field '" + key + "'");
  return *it;
}

double require_number(const json& j, const char* key, const char* ctx) {
  const json& v = require_field(j, key, ctx);
  if (!v.is_number())
    throw ConfigError(std::string(ctx) + ": field '" + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const char* ctx) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number())
    throw ConfigError(std::string(ctx) + ": field '" + key + "' must be a number");
  return it->get<double>();
}

std::string require_string(const json& j, const char* key, const char* ctx) {
  const json& v = require_field(j, key, ctx);
  if (!v.is_string())
    throw ConfigError(std::string(ctx) + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

Eigen::VectorXd require_vector(const json& j, const char* key, const char* ctx) {
  const json& v = require_field(j, key, ctx);
  if (!v.is_array() || v.empty())
    throw ConfigError(std::string(ctx) + ": field '" + key +
                      "' must be a nonempty array of numbers");
  Eigen::VectorXd out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number())
      throw ConfigError(std::string(ctx) + ": field '" + key +
                        "' must contain only numbers");
    out(i) = v[i].get<double>();
  }
  return out;
}

json vector_to_json(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.begin(), v.end()));
}

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  return buf;
}

json meta_block(std::uint64_t seed) {
  return json{{"timestamp", iso_timestamp()}, {"seed", seed}};
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write output file: " + path.string());
  out << j.dump(2) << "\n";
  log_msg(2, "wrote " + path.string());
}

// ----------------------------------------------------- shared config parts

const PlantBundle& resolve_plant(const json& cfg, const char* ctx) {
  std::string label = require_string(cfg, "plant", ctx);
  try {
    return get_plant(label);
  } catch (const Error& e) {
    throw ConfigError(std::string(ctx) + ": " + e.what());
  }
}

InputSet resolve_set(const json& cfg, const PlantBundle& bundle, const char* ctx) {
  auto it = cfg.find("set");
  if (it == cfg.end()) return bundle.input_set;
  try {
    return input_set_from_json(*it);
  } catch (const json::exception& e) {
    throw ConfigError(std::string(ctx) + ": malformed 'set': " + e.what());
  } catch (const Error& e) {
    throw ConfigError(std::string(ctx) + ": invalid 'set': " + e.what());
  }
}

DomainBox resolve_domain(const json& cfg, const PlantBundle& bundle,
                         const char* ctx) {
  auto it = cfg.find("domain");
  if (it == cfg.end()) return bundle.domain;
  DomainBox d;
  d.lo = require_vector(*it, "lo", ctx);
  d.hi = require_vector(*it, "hi", ctx);
  if (d.lo.size() != bundle.plant.n || d.hi.size() != bundle.plant.n)
    throw ConfigError(std::string(ctx) + ": domain bounds must have length " +
                      std::to_string(bundle.plant.n));
  return d;
}

ClassKSpec resolve_alpha(const json& cfg, const char* ctx) {
  auto it = cfg.find("alpha");
  if (it == cfg.end()) return make_linear_class_k(1.0);
  double a = require_number(*it, "a", ctx);
  if (a <= 0.0) throw ConfigError(std::string(ctx) + ": alpha.a must be > 0");
  return make_linear_class_k(a);
}

Floors resolve_floors(const json& cfg, const char* ctx) {
  Floors f;
  auto it = cfg.find("floors");
  if (it == cfg.end()) return f;
  f.d_min = number_or(*it, "d_min", f.d_min, ctx);
  f.s_min = number_or(*it, "s_min", f.s_min, ctx);
  if (f.d_min <= 0.0 || f.s_min <= 0.0)
    throw ConfigError(std::string(ctx) + ": floors must be positive");
  return f;
}

SamplePlan resolve_plan(const json& cfg, const PlantBundle& bundle,
                        const char* ctx) {
  SamplePlan plan;
  std::string method = require_string(cfg, "method", ctx);
  if (method == "grid") {
    plan.method = SampleMethod::Grid;
    const json& counts = require_field(cfg, "grid_counts", ctx);
    if (!counts.is_array() ||
        counts.size() != static_cast<size_t>(bundle.plant.n))
      throw ConfigError(std::string(ctx) + ": grid_counts must be an array of " +
                        std::to_string(bundle.plant.n) + " integers");
    for (const auto& c : counts) {
      if (!c.is_number_integer() || c.get<int>() < 1)
        throw ConfigError(std::string(ctx) + ": grid_counts entries must be integers >= 1");
      plan.grid_counts.push_back(c.get<int>());
    }
  } else if (method == "lhs") {
    plan.method = SampleMethod::LatinHypercube;
    double n = require_number(cfg, "n_samples", ctx);
    if (n < 1 || n != std::floor(n))
      throw ConfigError(std::string(ctx) + ": n_samples must be a positive integer");
    plan.n_samples = static_cast<int>(n);
    plan.kappa = require_number(cfg, "kappa", ctx);
    if (!(plan.kappa >= 0.0))
      throw ConfigError(std::string(ctx) + ": kappa must be >= 0");
  } else {
    throw ConfigError(std::string(ctx) + ": method must be \"grid\" or \"lhs\"");
  }
  return plan;
}

std::uint64_t resolve_seed(const json& cfg,
                           const std::optional<std::uint64_t>& override_seed,
                           const char* ctx) {
  if (override_seed) return *override_seed;
  auto it = cfg.find("seed");
  if (it == cfg.end()) return 0;
  if (!it->is_number_integer() || it->get<std::int64_t>() < 0)
    throw ConfigError(std::string(ctx) + ": seed must be a nonnegative integer");
  return it->get<std::uint64_t>();
}

TuningParams params_from_json(const json& p, const char* ctx) {
  double lambda_min = number_or(p, "lambda_min", 0.01, ctx);
  double ln_eps0;
  if (p.contains("ln_eps0"))
    ln_eps0 = require_number(p, "ln_eps0", ctx);
  else if (p.contains("eps0")) {
    double eps0 = require_number(p, "eps0", ctx);
    if (eps0 <= 0.0) throw ConfigError(std::string(ctx) + ": eps0 must be > 0");
    ln_eps0 = std::log(eps0);
  } else {
    throw ConfigError(std::string(ctx) + ": params need 'ln_eps0' or 'eps0'");
  }
  double lambda = require_number(p, "lambda", ctx);
  try {
    return make_tuning_params(ln_eps0, lambda, lambda_min);
  } catch (const Error& e) {
    throw ConfigError(std::string(ctx) + ": " + e.what());
  }
}

TuningParams resolve_params(const json& holder, const char* ctx) {
  if (holder.contains("params")) return params_from_json(holder["params"], ctx);
  if (holder.contains("params_from")) {
    std::string path = holder["params_from"].get<std::string>();
    json result = load_config(path);
    if (!result.contains("params"))
      throw ConfigError(std::string(ctx) + ": '" + path + "' has no 'params' field");
    return params_from_json(result["params"], ctx);
  }
  throw ConfigError(std::string(ctx) + ": need 'params' or 'params_from'");
}

const char* tuning_status_name(TuningStatus s) {
  switch (s) {
    case TuningStatus::Optimal: return "optimal";
    case TuningStatus::Infeasible: return "infeasible";
    case TuningStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

const char* degeneracy_name(DegeneracyReason r) {
  switch (r) {
    case DegeneracyReason::None: return "none";
    case DegeneracyReason::GradientFloor: return "gradient_floor";
    case DegeneracyReason::SupportSumFloor: return "support_sum_floor";
  }
  return "unknown";
}

// ----------------------------------------------------------------- tune

int cmd_tune(const json& cfg, const fs::path& out_dir,
             const std::optional<std::uint64_t>& seed_override) {
  const char* ctx = "tune";
  const PlantBundle& bundle = resolve_plant(cfg, ctx);
  InputSet set = resolve_set(cfg, bundle, ctx);
  DomainBox domain = resolve_domain(cfg, bundle, ctx);
  BarrierSpec barrier = bundle.barrier;
  barrier.alpha = resolve_alpha(cfg, ctx);

  SynthesisConfig sc;
  sc.plan = resolve_plan(cfg, bundle, ctx);
  sc.rho = number_or(cfg, "rho", 1.0, ctx);
  if (sc.rho < 0.0) throw ConfigError("tune: rho must be >= 0");
  sc.lambda_min = number_or(cfg, "lambda_min", 0.01, ctx);
  if (sc.lambda_min <= 0.0) throw ConfigError("tune: lambda_min must be > 0");
  sc.floors = resolve_floors(cfg, ctx);
  sc.fd_step = number_or(cfg, "fd_step", 1e-6, ctx);
  if (sc.fd_step <= 0.0) throw ConfigError("tune: fd_step must be > 0");
  if (cfg.contains("lipschitz")) {
    const json& L = cfg["lipschitz"];
    sc.prescribed_lipschitz = std::make_pair(require_number(L, "L_h", ctx),
                                             require_number(L, "L_eta", ctx));
  }
  sc.seed = resolve_seed(cfg, seed_override, ctx);

  TuningLpResult result;
  try {
    result = synthesize(domain, bundle.plant, barrier, set, sc);
  } catch (const EmptySampleSetError& e) {
    log_msg(0, std::string("tune: ") + e.what());
    return 3;
  } catch (const AllDegenerateError& e) {
    log_msg(0, std::string("tune: ") + e.what());
    return 3;
  }

  json rejected = json::array();
  for (const auto& [state, reason] : result.samples.rejected)
    rejected.push_back(
        {{"state", vector_to_json(state)}, {"reason", degeneracy_name(reason)}});

  json out{
      {"schema_version", 1},
      {"meta", meta_block(sc.seed)},
      {"plant", bundle.plant.label},
      {"status", tuning_status_name(result.status)},
      {"n_constraints", result.n_constraints},
      {"kappa", {{"nominal", result.samples.kappa_nominal},
                 {"effective", result.samples.kappa_effective}}},
      {"samples", {{"kept", result.samples.points.size()},
                   {"rejected", result.samples.rejected.size()},
                   {"rejected_detail", rejected},
                   {"exclusion_warning", result.exclusion_warning}}},
  };
  if (result.status == TuningStatus::Optimal) {
    out["params"] = {{"ln_eps0", result.params.ln_eps0},
                     {"eps0", std::exp(result.params.ln_eps0)},
                     {"lambda", result.params.lambda},
                     {"lambda_min", result.params.lambda_min}};
    out["active_samples"] = result.active_samples;
    out["lipschitz"] = {
        {"L_h", result.lipschitz.L_h},
        {"L_eta", result.lipschitz.L_eta},
        {"method", result.lipschitz.method == LipschitzMethod::Prescribed
                       ? "prescribed"
                       : "gradient_max"}};
    out["verification"] = {
        {"min_margin", result.min_margin},
        {"worst_state", vector_to_json(result.worst_state)},
        {"violations", result.verification_violations},
        {"n_checked", result.n_verification}};
  }
  write_json(out_dir / "tuning_result.json", out);

  if (result.status != TuningStatus::Optimal) {
    log_msg(0, std::string("tune: LP status ") + tuning_status_name(result.status));
    return 2;
  }
  if (result.exclusion_warning)
    log_msg(1, "tune: more than 20% of in-set samples were excluded as degenerate");
  if (result.verification_violations > 0)
    log_msg(1, "tune: independent verification found " +
                   std::to_string(result.verification_violations) +
                   " compatibility violations (min margin " +
                   std::to_string(result.min_margin) + ")");
  return 0;
}

// ------------------------------------------------------------- simulate

ControllerKind controller_kind_from(const std::string& kind, const char* ctx) {
  if (kind == "lp_qp") return ControllerKind::LpQpFilter;
  if (kind == "fixed_form") return ControllerKind::BaselineFixedForm;
  if (kind == "saturated") return ControllerKind::BaselineSaturated;
  if (kind == "trial") return ControllerKind::TrialParams;
  throw ConfigError(std::string(ctx) +
                    ": controller kind must be lp_qp|fixed_form|saturated|trial");
}

json summary_to_json(const TrajectorySummary& s) {
  json j;
  to_json(j, s);
  return j;
}

void write_scenario_outputs(const fs::path& out_dir, const std::string& suffix,
                            const TrajectoryLog& log, const json& controller_cfg,
                            const std::string& plant_label) {
  fs::path csv_path = out_dir / ("trajectory" + suffix + ".csv");
  std::ofstream csv(csv_path);
  if (!csv) throw ConfigError("cannot write output file: " + csv_path.string());
  write_trajectory_csv(csv, log);
  log_msg(2, "wrote " + csv_path.string());

  json out{{"schema_version", 1},
           {"meta", meta_block(0)},
           {"plant", plant_label},
           {"controller", controller_cfg},
           {"summary", summary_to_json(log.summary)}};
  write_json(out_dir / ("summary" + suffix + ".json"), out);
}

int cmd_simulate(const json& cfg, const fs::path& out_dir) {
  const char* ctx = "simulate";
  const PlantBundle& bundle = resolve_plant(cfg, ctx);

  std::vector<json> controllers;
  if (cfg.contains("controllers")) {
    const json& arr = cfg["controllers"];
    if (!arr.is_array() || arr.empty())
      throw ConfigError("simulate: 'controllers' must be a nonempty array");
    controllers.assign(arr.begin(), arr.end());
  } else if (cfg.contains("controller")) {
    controllers.push_back(cfg["controller"]);
  } else {
    throw ConfigError("simulate: need 'controller' or 'controllers'");
  }

  ScenarioConfig base;
  base.plant_label = bundle.plant.label;
  base.t_end = number_or(cfg, "t_end", 10.0, ctx);
  base.dt = number_or(cfg, "dt", 1e-3, ctx);
  if (base.dt <= 0.0 || base.t_end < base.dt)
    throw ConfigError("simulate: need dt > 0 and t_end >= dt");
  double re = number_or(cfg, "record_every", 1.0, ctx);
  if (re < 1 || re != std::floor(re))
    throw ConfigError("simulate: record_every must be a positive integer");
  base.record_every = static_cast<int>(re);
  base.qp_tol = number_or(cfg, "qp_tol", 1e-10, ctx);
  if (base.qp_tol <= 0.0) throw ConfigError("simulate: qp_tol must be > 0");
  base.alpha = resolve_alpha(cfg, ctx);
  if (cfg.contains("x0")) {
    base.x0 = require_vector(cfg, "x0", ctx);
    if (base.x0.size() != bundle.plant.n)
      throw ConfigError("simulate: x0 must have length " +
                        std::to_string(bundle.plant.n));
  }

  int exit_code = 0;
  const bool batch = controllers.size() > 1;
  for (size_t i = 0; i < controllers.size(); ++i) {
    const json& c = controllers[i];
    ScenarioConfig sc = base;
    std::string kind = require_string(c, "kind", ctx);
    sc.controller.kind = controller_kind_from(kind, ctx);
    sc.controller.params = resolve_params(c, ctx);
    sc.controller.name =
        c.contains("name") ? c["name"].get<std::string>() : kind;
    std::string suffix = batch ? "_" + sc.controller.name : "";

    try {
      TrajectoryLog log = run_scenario(bundle, sc);
      write_scenario_outputs(out_dir, suffix, log, c, bundle.plant.label);
    } catch (const ScenarioFailureError& e) {
      log_msg(0, "simulate[" + sc.controller.name + "]: " + e.what() + " at t=" +
                     std::to_string(e.t));
      if (e.partial && !e.partial->records.empty())
        write_scenario_outputs(out_dir, suffix, *e.partial, c, bundle.plant.label);
      if (exit_code == 0) exit_code = 4;
    } catch (const NonFiniteStateError& e) {
      log_msg(0, "simulate[" + sc.controller.name + "]: " + e.what() + " at t=" +
                     std::to_string(e.t));
      if (e.partial && !e.partial->records.empty())
        write_scenario_outputs(out_dir, suffix, *e.partial, c, bundle.plant.label);
      if (exit_code == 0) exit_code = 5;
    }
  }
  return exit_code;
}

// --------------------------------------------------------------- verify

int cmd_verify(const json& cfg, const fs::path& out_dir,
               const std::optional<std::uint64_t>& seed_override) {
  const char* ctx = "verify";
  const PlantBundle& bundle = resolve_plant(cfg, ctx);
  InputSet set = resolve_set(cfg, bundle, ctx);
  DomainBox domain = resolve_domain(cfg, bundle, ctx);
  BarrierSpec barrier = bundle.barrier;
  barrier.alpha = resolve_alpha(cfg, ctx);
  TuningParams params = resolve_params(cfg, ctx);
  Floors floors = resolve_floors(cfg, ctx);
  SamplePlan plan = resolve_plan(cfg, bundle, ctx);
  std::uint64_t seed = resolve_seed(cfg, seed_override, ctx);

  SampleSet samples;
  try {
    samples = sample_covering(domain, barrier, plan, seed);
  } catch (const EmptySampleSetError& e) {
    log_msg(0, std::string("verify: ") + e.what());
    return 3;
  }
  VerificationReport rep = verify_compatibility(params, bundle.plant, barrier,
                                                set, samples.points, floors);

  constexpr size_t kMaxListed = 100; // full count always reported
  json violations = json::array();
  for (size_t i = 0; i < rep.violations.size() && i < kMaxListed; ++i)
    violations.push_back(vector_to_json(rep.violations[i]));

  json out{{"schema_version", 1},
           {"meta", meta_block(seed)},
           {"plant", bundle.plant.label},
           {"params", {{"ln_eps0", params.ln_eps0},
                       {"eps0", std::exp(params.ln_eps0)},
                       {"lambda", params.lambda},
                       {"lambda_min", params.lambda_min}}},
           {"min_margin", rep.min_margin},
           {"worst_state", vector_to_json(rep.worst_state)},
           {"n_violations", rep.violations.size()},
           {"violations", violations},
           {"n_checked", rep.n_checked},
           {"n_degenerate", rep.n_degenerate},
           {"kappa", {{"nominal", samples.kappa_nominal},
                      {"effective", samples.kappa_effective}}}};
  write_json(out_dir / "verify.json", out);
  return rep.violations.empty() ? 0 : 6;
}

// -------------------------------------------------------------- support

int cmd_support(const json& cfg) {
  const char* ctx = "support";
  InputSet set;
  try {
    set = input_set_from_json(require_field(cfg, "set", ctx));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("support: malformed 'set': ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(std::string("support: invalid 'set': ") + e.what());
  }
  const json& dirs = require_field(cfg, "directions", ctx);
  if (!dirs.is_array() || dirs.empty())
    throw ConfigError("support: 'directions' must be a nonempty array of arrays");
  for (const auto& dj : dirs) {
    if (!dj.is_array())
      throw ConfigError("support: each direction must be an array of numbers");
    Eigen::VectorXd d(dj.size());
    for (size_t i = 0; i < dj.size(); ++i) d(i) = dj[i].get<double>();
    json line{{"d", vector_to_json(d)},
              {"sigma", support_value(set, d)},
              {"u_star", vector_to_json(support_point(set, d))}};
    std::cout << line.dump() << "\n";
  }
  return 0;
}

// --------------------------------------------------------------- report

// Rebuilds the summary from a previously written trajectory CSV. Columns are
// located by the fixed header; d is not serialized, so only summary-relevant
// fields are reconstructed.
int cmd_report(const json& cfg, const fs::path& out_dir) {
  const char* ctx = "report";
  const PlantBundle& bundle = resolve_plant(cfg, ctx);
  std::string csv_path = require_string(cfg, "trajectory", ctx);
  std::ifstream in(csv_path);
  if (!in) throw ConfigError("report: cannot open trajectory file: " + csv_path);

  std::string header;
  if (!std::getline(in, header))
    throw ConfigError("report: trajectory file is empty");
  std::vector<std::string> cols;
  {
    std::stringstream ss(header);
    std::string tok;
    while (std::getline(ss, tok, ',')) cols.push_back(tok);
  }
  auto col_of = [&](const std::string& name) {
    for (size_t i = 0; i < cols.size(); ++i)
      if (cols[i] == name) return static_cast<int>(i);
    throw ConfigError("report: trajectory header lacks column '" + name + "'");
  };
  int n = 0, m = 0;
  for (const auto& c : cols) {
    if (c.size() > 1 && c[0] == 'x') n = std::max(n, std::atoi(c.c_str() + 1));
    if (c.size() > 1 && c[0] == 'u') m = std::max(m, std::atoi(c.c_str() + 1));
  }
  if (n == 0 || m == 0 || n != bundle.plant.n || m != bundle.plant.m)
    throw ConfigError("report: trajectory columns do not match plant '" +
                      bundle.plant.label + "'");
  const int ct = col_of("t"), cx = col_of("x1"), cu = col_of("u1");
  const int ch = col_of("h"), chz = col_of("h_plus_zeta"), cst = col_of("qp_status");

  std::vector<TrajectoryRecord> records;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> parts;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(tok);
    if (parts.size() != cols.size())
      throw ConfigError("report: line " + std::to_string(lineno) +
                        " has the wrong number of fields");
    auto num = [&](int idx) {
      try {
        return std::stod(parts[idx]);
      } catch (...) {
        throw ConfigError("report: line " + std::to_string(lineno) +
                          " has a non-numeric field");
      }
    };
    TrajectoryRecord r;
    r.t = num(ct);
    r.x.resize(n);
    for (int i = 0; i < n; ++i) r.x(i) = num(cx + i);
    r.u.resize(m);
    for (int j = 0; j < m; ++j) r.u(j) = num(cu + j);
    r.h = num(ch);
    r.h_plus_zeta = num(chz);
    const std::string& st = parts[cst];
    if (st == "optimal") r.qp_status = QpLogStatus::Optimal;
    else if (st == "infeasible") r.qp_status = QpLogStatus::Infeasible;
    else if (st == "none") r.qp_status = QpLogStatus::None;
    else
      throw ConfigError("report: line " + std::to_string(lineno) +
                        " has an unknown qp_status");
    records.push_back(std::move(r));
  }
  if (records.empty()) throw ConfigError("report: trajectory has no records");

  TrajectorySummary summary = summarize(records, bundle.input_set);
  json out{{"schema_version", 1},
           {"meta", meta_block(0)},
           {"plant", bundle.plant.label},
           {"trajectory", csv_path},
           {"summary", summary_to_json(summary)}};
  write_json(out_dir / "report.json", out);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tuning-function synthesis and safety-filter simulation"};
  app.require_subcommand(1);

  std::string config_path, out_dir_str = ".", log_level = "info";
  std::int64_t seed_flag = -1;

  auto add_common = [&](CLI::App* sub, bool needs_out) {
    sub->add_option("--config", config_path, "JSON config file")->required();
    if (needs_out) sub->add_option("--out", out_dir_str, "output directory");
    sub->add_option("--seed", seed_flag, "override the config's RNG seed");
    sub->add_option("--log-level", log_level, "error|warn|info|debug");
  };

  CLI::App* tune = app.add_subcommand("tune", "synthesize tuning parameters");
  CLI::App* simulate = app.add_subcommand("simulate", "run closed-loop scenarios");
  CLI::App* verify = app.add_subcommand("verify", "check compatibility margins");
  CLI::App* support = app.add_subcommand("support", "evaluate support functions");
  CLI::App* report = app.add_subcommand("report", "recompute a summary from a trajectory CSV");
  add_common(tune, true);
  add_common(simulate, true);
  add_common(verify, true);
  add_common(support, false);
  add_common(report, true);

  CLI11_PARSE(app, argc, argv);

  try {
    g_log_level = parse_log_level(log_level);
    std::optional<std::uint64_t> seed_override;
    if (seed_flag >= 0) seed_override = static_cast<std::uint64_t>(seed_flag);

    json cfg = load_config(config_path);
    fs::path out_dir(out_dir_str);
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    if (tune->parsed()) return cmd_tune(cfg, out_dir, seed_override);
    if (simulate->parsed()) return cmd_simulate(cfg, out_dir);
    if (verify->parsed()) return cmd_verify(cfg, out_dir, seed_override);
    if (support->parsed()) return cmd_support(cfg);
    if (report->parsed()) return cmd_report(cfg, out_dir);
    return 1;
  } catch (const ConfigError& e) {
    log_msg(0, e.what());
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "[error] " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    log_msg(0, e.what());
    return 1;
  } catch (const json::exception& e) {
    log_msg(0, std::string("config error: ") + e.what());
    return 1;
  }
}
