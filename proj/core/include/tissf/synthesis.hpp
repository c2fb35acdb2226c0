#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tissf/lp.hpp"
#include "tissf/tuning.hpp"

namespace tissf {

struct DomainBox {
  Eigen::VectorXd lo, hi; // lo < hi componentwise
};

enum class SampleMethod { Grid, LatinHypercube };

struct SamplePlan {
  SampleMethod method = SampleMethod::LatinHypercube;
  std::vector<int> grid_counts; // Grid: points per axis (>= 1 each)
  int n_samples = 0;            // LatinHypercube: total points
  double kappa = 0.0;           // LatinHypercube: covering radius claimed by the caller
};

struct SampleSet {
  // Retained samples (h >= 0). After synthesis the degenerate ones have been
  // moved to `rejected`, so constraint row i corresponds to points[i].
  std::vector<Eigen::VectorXd> points;
  SampleMethod method = SampleMethod::Grid;
  // Grid: half the cell diagonal (exact covering radius of the full box).
  // LatinHypercube: the caller's claimed kappa, recorded as-is.
  double kappa_nominal = 0.0;
  // Empirical check of the covering premise: the max over 1000 seeded probe
  // points (uniform in the domain, h >= 0) of the Euclidean distance to the
  // nearest retained sample.
  double kappa_effective = 0.0;
  // Degenerate exclusions, filled during constraint assembly.
  std::vector<std::pair<Eigen::VectorXd, DegeneracyReason>> rejected;
};

// Deterministic sampling of C = {h >= 0} intersected with the domain box.
// Grid uses the per-axis counts in plan.grid_counts; LatinHypercube shuffles
// one stratum permutation per axis with jitter. Throws EmptySampleSetError
// when no point lands in C.
SampleSet sample_covering(const DomainBox& domain, const BarrierSpec& barrier,
                          const SamplePlan& plan, std::uint64_t seed);

enum class LipschitzMethod { GradientMax, Prescribed };

struct LipschitzEstimates {
  double L_h = 0.0;
  double L_eta = 0.0;
  LipschitzMethod method = LipschitzMethod::GradientMax;
};

// Max central-finite-difference gradient norms of h and eta over the samples
// (step fd_step*(1+|x_i|) per axis). Samples whose eta stencil hits a
// degenerate point contribute to L_h only; AllDegenerateError if none
// yields an eta gradient.
LipschitzEstimates estimate_lipschitz(const PlantSpec& plant,
                                      const BarrierSpec& barrier,
                                      const InputSet& set,
                                      const std::vector<Eigen::VectorXd>& samples,
                                      double fd_step,
                                      const Floors& floors = {});

LipschitzEstimates prescribed_lipschitz(double L_h, double L_eta);

// One robustified constraint per sample, in solve_2d form with y = (ln_eps0,
// lambda):  ln_eps0 + lambda*(h_i - L_h*kappa) >= eta_i + L_eta*kappa,
// plus the floor lambda >= lambda_min.
std::vector<Constraint2d> assemble_constraints(
    const std::vector<double>& h_values, const std::vector<double>& eta_values,
    const LipschitzEstimates& lipschitz, double kappa, double lambda_min);

struct SynthesisConfig {
  SamplePlan plan;
  double rho = 1.0;        // objective weight: minimize ln_eps0 + rho*lambda
  double lambda_min = 0.01;
  Floors floors;
  double fd_step = 1e-6;
  // When set, skips gradient estimation and uses these (L_h, L_eta).
  std::optional<std::pair<double, double>> prescribed_lipschitz;
  std::uint64_t seed = 0;
};

enum class TuningStatus { Optimal, Infeasible, Unbounded };

struct TuningLpResult {
  TuningStatus status = TuningStatus::Infeasible;
  TuningParams params; // meaningful when Optimal
  int n_constraints = 0;
  std::vector<int> active_samples; // indices into samples.points, tight at the optimum
  // Verification on an independent uniform sample 10x the synthesis count:
  // min over it of ln_eps0 + lambda*h - eta (>= 0 means the tuning transfers).
  double min_margin = 0.0;
  Eigen::VectorXd worst_state;
  int verification_violations = 0;
  int n_verification = 0;
  LipschitzEstimates lipschitz;
  SampleSet samples;             // retained points + degenerate exclusions
  bool exclusion_warning = false; // more than 20% of in-C samples excluded
};

// Full pipeline: sample C, evaluate (h, eta) per sample (excluding degenerate
// ones), estimate or accept Lipschitz constants, assemble the robust
// constraints, solve the 2-variable LP with objective (1, rho), and verify
// the result on an independent denser sample. Throws EmptySampleSetError /
// AllDegenerateError; LP infeasibility comes back in the status field.
TuningLpResult synthesize(const DomainBox& domain, const PlantSpec& plant,
                          const BarrierSpec& barrier, const InputSet& set,
                          const SynthesisConfig& config);

struct VerificationReport {
  double min_margin = 0.0;
  Eigen::VectorXd worst_state;
  std::vector<Eigen::VectorXd> violations; // states with margin < 0
  int n_checked = 0;
  int n_degenerate = 0;
};

// Pointwise compatibility margin ln_eps0 + lambda*h(x) - eta(x) over the
// given samples (degenerate ones skipped and counted).
VerificationReport verify_compatibility(const TuningParams& params,
                                        const PlantSpec& plant,
                                        const BarrierSpec& barrier,
                                        const InputSet& set,
                                        const std::vector<Eigen::VectorXd>& samples,
                                        const Floors& floors = {});

} // namespace tissf
