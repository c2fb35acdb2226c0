#include <benchmark/benchmark.h>

#include <random>

#include <tissf/plants.hpp>
#include <tissf/qp_filter.hpp>
#include <tissf/tuning.hpp>

using namespace tissf;
using Eigen::VectorXd;

namespace {

VectorXd direction(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> gauss;
  VectorXd d(m);
  for (int i = 0; i < m; ++i) d(i) = gauss(rng);
  if (d.norm() < 1e-12) d(0) = 1.0;
  return d;
}

InputSet cross_polytope(int m) {
  // All sign patterns of sum_i +-u_i <= 1.
  Eigen::MatrixXd A(1 << m, m);
  for (int mask = 0; mask < (1 << m); ++mask)
    for (int i = 0; i < m; ++i)
      A(mask, i) = (mask >> i) & 1 ? 1.0 : -1.0;
  return InputSet::polyhedron(A, Eigen::VectorXd::Ones(1 << m));
}

void bench_support_box(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  InputSet set = InputSet::box(-VectorXd::Ones(m), VectorXd::Ones(m));
  std::mt19937_64 rng(1);
  VectorXd d = direction(rng, m);
  for (auto _ : state) benchmark::DoNotOptimize(support_value(set, d));
}

void bench_support_ball(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  InputSet set = InputSet::ball(2.0);
  std::mt19937_64 rng(2);
  VectorXd d = direction(rng, m);
  for (auto _ : state) benchmark::DoNotOptimize(support_value(set, d));
}

void bench_support_polyhedron(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  InputSet set = cross_polytope(m);
  std::mt19937_64 rng(3);
  VectorXd d = direction(rng, m);
  for (auto _ : state) benchmark::DoNotOptimize(support_value(set, d));
}

void bench_project_polyhedron(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  InputSet set = cross_polytope(m);
  std::mt19937_64 rng(4);
  VectorXd q = 3.0 * direction(rng, m);
  for (auto _ : state) benchmark::DoNotOptimize(project(set, q));
}

void bench_safety_qp(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  QpInstance qp;
  qp.set = InputSet::box(-VectorXd::Ones(m), VectorXd::Ones(m));
  qp.q = 1.5 * direction(rng, m);
  qp.d = direction(rng, m).transpose();
  qp.rhs = 0.25 * qp.d.norm(); // active constraint, nontrivial dual search
  for (auto _ : state) benchmark::DoNotOptimize(solve_safety_qp(qp));
}

void bench_controller_step(benchmark::State& state) {
  // One full filtered-controller evaluation on the cruise plant: Lie terms,
  // tuning function, constraint assembly, projection QP.
  const PlantBundle& b = get_plant("ccc");
  TuningParams params = make_tuning_params(std::log(14.0), 0.01, 0.01);
  Eigen::Vector3d x(40.0, 15.0, 15.0);
  for (auto _ : state) {
    HalfspaceRow row = tissf_halfspace(b.plant, b.barrier, params, x);
    QpInstance qp{b.nominal(x), row.d, row.rhs, b.input_set};
    benchmark::DoNotOptimize(solve_safety_qp(qp));
  }
}

void bench_eta(benchmark::State& state) {
  const PlantBundle& b = get_plant("ccc");
  Eigen::Vector3d x(40.0, 15.0, 15.0);
  for (auto _ : state) {
    LieTerms lt = lie_terms(b.plant, b.barrier, x);
    benchmark::DoNotOptimize(eta(lt.c, lt.d, b.input_set));
  }
}

BENCHMARK(bench_support_box)->Arg(1)->Arg(3)->Arg(8);
BENCHMARK(bench_support_ball)->Arg(1)->Arg(3)->Arg(8);
BENCHMARK(bench_support_polyhedron)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(bench_project_polyhedron)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(bench_safety_qp)->Arg(1)->Arg(3)->Arg(8);
BENCHMARK(bench_controller_step);
BENCHMARK(bench_eta);

} // namespace

BENCHMARK_MAIN();
