#include <benchmark/benchmark.h>

#include <ecmo/explorer.hpp>
#include <ecmo/fixtures.hpp>
#include <ecmo/solver.hpp>

using namespace ecmo;

namespace {

static void BM_penalty_gradient(benchmark::State& state) {
  const Fixture fx = get_fixture("gebken_circle");
  const Preference lambda = Preference::uniform(2);
  PenaltyState theta = initial_state(fx.problem, lambda, fx.z0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(penalty_gradient(fx.problem, lambda, 10.0, 10.0, theta));
  }
}
BENCHMARK(BM_penalty_gradient);

static void BM_kkt_residual(benchmark::State& state) {
  const Fixture fx = get_fixture("forum_llgc");
  const Preference lambda = Preference::uniform(2);
  const Vector z = fx.z0;
  const Vector omega = Vector::Constant(2, 0.5);
  const Vector nu = Vector::Zero(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kkt_residual(fx.problem, lambda, 1.0, z, omega, nu));
  }
}
BENCHMARK(BM_kkt_residual);

static void BM_solve_wc_penalty_1k(benchmark::State& state) {
  const Fixture fx = get_fixture("gebken_circle");
  const SolverConfig cfg = SolverConfig::with_schedule(1000, fx.z0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_wc_penalty(fx.problem, Preference::uniform(2), cfg));
  }
}
BENCHMARK(BM_solve_wc_penalty_1k);

static void BM_pareto_filter(benchmark::State& state) {
  RandomStream rng(1, 1);
  std::vector<FrontEntry> points;
  for (int i = 0; i < state.range(0); ++i) {
    FrontEntry e;
    e.F = Vector(2);
    e.F << rng.uniform(RandomStream::key(i, 0)), rng.uniform(RandomStream::key(i, 1));
    e.z = Vector::Zero(1);
    e.lambda = Vector::Zero(2);
    e.run_id = i;
    points.push_back(std::move(e));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(pareto_filter(points));
  }
}
BENCHMARK(BM_pareto_filter)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_hypervolume_s3(benchmark::State& state) {
  RandomStream rng(2, 2);
  std::vector<Vector> points;
  for (int i = 0; i < 64; ++i) {
    Vector p(3);
    for (int s = 0; s < 3; ++s) p[s] = rng.uniform(RandomStream::key(i, s));
    points.push_back(std::move(p));
  }
  const Vector ref = Vector::Constant(3, 1.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hypervolume(points, ref));
  }
}
BENCHMARK(BM_hypervolume_s3);

static void BM_reference_front_gebken(benchmark::State& state) {
  const Fixture fx = get_fixture("gebken_circle");
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference_front(fx, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_reference_front_gebken)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
