#include <algorithm>
#include <doctest.h>
#include <ecmo/explorer.hpp>
#include <ecmo/fixtures.hpp>

#include "oracles.hpp"

using namespace ecmo;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("simplex grid hand cases") {
  const std::vector<Preference> r2 = simplex_grid(2, 2, 0.01);
  REQUIRE(r2.size() == 3);
  CHECK(r2[0].weights() == vec({0.01, 0.99}));
  CHECK(r2[1].weights()[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r2[2].weights()[0] == 0.99);
  CHECK(r2[2].weights()[1] == 0.01);

  // the vertices at S = 5, floor 0.01 concentrate 0.96 on one coordinate
  const std::vector<Preference> r5 = simplex_grid(5, 1, 0.01);
  REQUIRE(r5.size() == 5);
  for (const Preference& p : r5) {
    int heavy = 0;
    for (int s = 0; s < 5; ++s) {
      if (p[s] == doctest::Approx(0.96).epsilon(1e-14))
        ++heavy;
      else
        CHECK(p[s] == 0.01);
    }
    CHECK(heavy == 1);
  }

  const std::vector<Preference> centroid = simplex_grid(3, 0, 0.05);
  REQUIRE(centroid.size() == 1);
  CHECK(centroid[0].weights() == Vector::Constant(3, 1.0 / 3.0));

  CHECK_THROWS_AS(simplex_grid(2, 3, 0.5), InputError);   // floor*S >= 1
  CHECK_THROWS_AS(simplex_grid(2, 3, 0.0), InputError);   // floor must be positive
  CHECK_THROWS_AS(simplex_grid(1, 3, 0.1), InputError);
}

TEST_CASE("simplex grid sums to one, respects the floor, and is lexicographic") {
  for (const int S : {2, 3, 5}) {
    const std::vector<Preference> grid = simplex_grid(S, 7, 0.02);
    for (const Preference& p : grid) {
      CHECK(std::abs(p.weights().sum() - 1.0) <= 1e-12);
      CHECK(p.weights().minCoeff() >= 0.02);
    }
    // lexicographic in the lattice index means lambda_1 ascends first
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const Vector& a = grid[i - 1].weights();
      const Vector& b = grid[i].weights();
      bool ordered = false;
      for (int s = 0; s < S; ++s) {
        if (a[s] < b[s] - 1e-15) {
          ordered = true;
          break;
        }
        if (a[s] > b[s] + 1e-15) break;
      }
      CHECK(ordered);
    }
    // count: compositions of 7 into S parts
    std::size_t expected = 1;
    for (int i = 1; i < S; ++i) expected = expected * (7 + i) / i;
    CHECK(grid.size() == expected);
  }
}

TEST_CASE("sweep assembles a mutually non-dominated, preference-tagged front") {
  const Fixture fx = get_fixture("gebken_circle");
  SweepSpec spec;
  spec.grid_resolution = 4;
  spec.config = SolverConfig::with_schedule(4000, vec({1.0, 0.0}));
  spec.workers = 2;
  const SweepResult sweep = sweep_preferences(fx.problem, spec, SolverKind::WcPenalty);
  CHECK(sweep.per_lambda.size() == 5);
  CHECK(sweep.front.size() >= 3);
  for (const FrontEntry& a : sweep.front.entries)
    for (const FrontEntry& b : sweep.front.entries) CHECK_FALSE(dominates(a.F, b.F));

  // each entry's preference reproduces its point exactly (determinism)
  for (const FrontEntry& e : sweep.front.entries) {
    SolverConfig cfg = spec.config;
    cfg.stream = static_cast<std::uint64_t>(e.run_id);
    const SolveResult again = solve_wc_penalty(fx.problem, Preference(e.lambda), cfg);
    CHECK(again.final_state.z == e.z);
    CHECK(again.final_F == e.F);
  }
}

TEST_CASE("sweep result does not depend on worker count or preference order") {
  const Fixture fx = get_fixture("gebken_circle");
  SweepSpec spec;
  spec.grid_resolution = 4;
  spec.config = SolverConfig::with_schedule(2000, vec({1.0, 0.0}));
  spec.workers = 1;
  const SweepResult serial = sweep_preferences(fx.problem, spec, SolverKind::WcPenalty);
  spec.workers = 4;
  const SweepResult parallel = sweep_preferences(fx.problem, spec, SolverKind::WcPenalty);
  REQUIRE(serial.front.size() == parallel.front.size());
  for (int i = 0; i < serial.front.size(); ++i) {
    CHECK(serial.front.entries[i].F == parallel.front.entries[i].F);
    CHECK(serial.front.entries[i].run_id == parallel.front.entries[i].run_id);
  }

  // explicit preference list in reversed order: same front as a set
  SweepSpec reversed = spec;
  reversed.preferences = simplex_grid(2, 4, 0.01);
  std::reverse(reversed.preferences.begin(), reversed.preferences.end());
  const SweepResult rev = sweep_preferences(fx.problem, reversed, SolverKind::WcPenalty);
  REQUIRE(rev.front.size() == serial.front.size());
  auto key = [](const FrontEntry& e) { return std::make_pair(e.F[0], e.F[1]); };
  std::vector<std::pair<double, double>> a, b;
  for (const FrontEntry& e : serial.front.entries) a.push_back(key(e));
  for (const FrontEntry& e : rev.front.entries) b.push_back(key(e));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
}

TEST_CASE("single-preference sweep admits that solve's endpoint") {
  const Fixture fx = get_fixture("gebken_circle");
  SweepSpec spec;
  spec.preferences = {Preference::uniform(2)};
  spec.config = SolverConfig::with_schedule(4000, vec({1.0, 0.0}));
  const SweepResult sweep = sweep_preferences(fx.problem, spec, SolverKind::WcPenalty);
  REQUIRE(sweep.front.size() == 1);
  CHECK(sweep.per_lambda[0].admitted);
  CHECK(sweep.front.entries[0].F == sweep.per_lambda[0].result->final_F);
}

TEST_CASE("diverged solves are recorded and excluded; all-diverged fails the sweep") {
  const Fixture fx = get_fixture("unbounded_guard");
  SweepSpec spec;
  spec.grid_resolution = 3;
  spec.config = SolverConfig::with_schedule(200, fx.z0, /*c_eta=*/10000.0);
  CHECK_THROWS_AS(sweep_preferences(fx.problem, spec, SolverKind::WcPenalty), DivergedError);
}

TEST_CASE("stochastic sweep derives one RNG stream per preference") {
  const Fixture fx = get_fixture("gebken_circle");
  StochasticProblem noisy(fx.problem, 0.1, 0.1);
  SweepSpec spec;
  spec.grid_resolution = 3;
  spec.config = SolverConfig::with_schedule(800, vec({1.0, 0.0}));
  spec.config.seed = 5;
  spec.workers = 2;
  const SweepResult a = sweep_preferences(noisy, spec);
  const SweepResult b = sweep_preferences(noisy, spec);
  REQUIRE(a.front.size() == b.front.size());
  for (int i = 0; i < a.front.size(); ++i)
    CHECK(a.front.entries[i].F == b.front.entries[i].F);
  // distinct preferences saw distinct noise streams
  REQUIRE(a.per_lambda.size() == 4);
  CHECK(a.per_lambda[0].result->final_state.z != a.per_lambda[3].result->final_state.z);
}

TEST_CASE("LS sweep covers the convex front") {
  const ECMOProblem quad = get_fixture("quad_affine").problem;
  SweepSpec spec;
  spec.grid_resolution = 4;
  spec.config.T = 400;
  spec.config.z0 = vec({0.2, 0.0});
  const SweepResult sweep = sweep_preferences(quad, spec, SolverKind::Ls);
  CHECK(sweep.front.size() == 5);  // distinct optima, all feasible
  for (const SweepItem& item : sweep.per_lambda) {
    REQUIRE(item.result.has_value());
    CHECK(item.admitted);
    CHECK(item.result->final_constraint_norm <= 1e-10);
  }
  for (const FrontEntry& a : sweep.front.entries)
    for (const FrontEntry& b : sweep.front.entries) CHECK_FALSE(dominates(a.F, b.F));
}

TEST_CASE("partial failures keep their error cause and stay off the front") {
  // At this step scale only the preference leaning hardest on the steep
  // objective goes unstable; the rest of the sweep survives.
  const Fixture fx = get_fixture("unbounded_guard");
  Vector z0(1);
  z0 << -0.5;
  SweepSpec spec;
  spec.grid_resolution = 4;
  spec.config = SolverConfig::with_schedule(300, z0, /*c_eta=*/0.0006);
  const SweepResult sweep = sweep_preferences(fx.problem, spec, SolverKind::WcPenalty);
  int failed = 0, succeeded = 0;
  for (const SweepItem& item : sweep.per_lambda) {
    if (item.result) {
      ++succeeded;
    } else {
      ++failed;
      CHECK_FALSE(item.error.empty());
      CHECK_FALSE(item.admitted);
    }
  }
  CHECK(failed >= 1);
  CHECK(succeeded >= 3);
  CHECK_FALSE(sweep.front.empty());
  for (const FrontEntry& e : sweep.front.entries)
    CHECK(sweep.per_lambda[e.run_id].result.has_value());
}

TEST_CASE("infeasible endpoints are reported but not admitted") {
  const Fixture fx = get_fixture("gebken_circle");
  SweepSpec spec;
  spec.preferences = {Preference::uniform(2)};
  spec.config = SolverConfig::with_schedule(40, fx.z0);  // far from feasible in 40 steps
  spec.admission_tol = 1e-9;
  const SweepResult sweep = sweep_preferences(fx.problem, spec, SolverKind::WcPenalty);
  CHECK(sweep.per_lambda[0].result.has_value());
  CHECK_FALSE(sweep.per_lambda[0].admitted);
  CHECK(sweep.front.empty());
}
