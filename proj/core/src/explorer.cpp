#include "ecmo/explorer.hpp"

#include <atomic>
#include <thread>

namespace ecmo {

std::vector<Preference> simplex_grid(int S, int resolution, double floor) {
  if (S < 2) throw InputError("simplex grid needs S >= 2");
  if (resolution < 0) throw InputError("simplex grid resolution must be >= 0");
  if (!(floor > 0.0) || floor * S >= 1.0)
    throw InputError("simplex grid floor must satisfy 0 < floor * S < 1");
  if (resolution == 0) return {Preference::uniform(S)};

  const double step = (1.0 - S * floor) / resolution;
  std::vector<Preference> out;
  std::vector<int> m(S, 0);
  // Lexicographic enumeration of compositions of `resolution` into S parts.
  std::function<void(int, int)> recurse = [&](int coord, int remaining) {
    if (coord == S - 1) {
      m[coord] = remaining;
      Vector lambda(S);
      for (int s = 0; s < S; ++s) lambda[s] = floor + m[s] * step;
      out.emplace_back(lambda);
      return;
    }
    for (int take = 0; take <= remaining; ++take) {
      m[coord] = take;
      recurse(coord + 1, remaining - take);
    }
  };
  recurse(0, resolution);
  return out;
}

namespace {

std::vector<Preference> spec_preferences(const SweepSpec& spec, int S) {
  if (!spec.preferences.empty()) {
    for (const Preference& p : spec.preferences)
      if (p.size() != S) throw InputError("sweep preference length must match objectives");
    return spec.preferences;
  }
  return simplex_grid(S, spec.grid_resolution, spec.grid_floor);
}

SweepResult run_sweep(const ECMOProblem& problem, const SweepSpec& spec,
                      const std::function<SolveResult(const Preference&, std::uint64_t)>& solve) {
  const std::vector<Preference> lambdas = spec_preferences(spec, problem.num_objectives());
  const int n = static_cast<int>(lambdas.size());
  std::vector<SweepItem> items(n);

  int workers = spec.workers > 0 ? spec.workers
                                 : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, n));

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      SweepItem& item = items[i];
      item.lambda = lambdas[i].weights();
      try {
        item.result = solve(lambdas[i], static_cast<std::uint64_t>(i));
      } catch (const DivergedError& err) {
        item.error = err.what();
      } catch (const std::exception& err) {
        item.error = err.what();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  // Deterministic assembly in preference order, independent of scheduling.
  const Vector& shifts = problem.objective_shifts();
  std::vector<FrontEntry> candidates;
  int succeeded = 0;
  for (int i = 0; i < n; ++i) {
    SweepItem& item = items[i];
    if (!item.result) continue;
    ++succeeded;
    if (item.result->final_constraint_norm <= spec.admission_tol) {
      item.admitted = true;
      FrontEntry entry;
      entry.z = item.result->final_state.z;
      entry.F = item.result->final_F - shifts;  // report in original coordinates
      entry.lambda = item.lambda;
      entry.run_id = i;
      candidates.push_back(std::move(entry));
    }
  }
  if (succeeded == 0) {
    std::string detail = items.empty() ? "no preferences" : items.front().error;
    throw DivergedError("every solve in the sweep failed: " + detail, PenaltyState{}, 0);
  }

  SweepResult result;
  result.per_lambda = std::move(items);
  result.front = pareto_filter(candidates);
  return result;
}

}  // namespace

SweepResult sweep_preferences(const ECMOProblem& problem, const SweepSpec& spec, SolverKind kind) {
  switch (kind) {
    case SolverKind::WcPenalty:
      return run_sweep(problem, spec, [&](const Preference& lambda, std::uint64_t stream) {
        SolverConfig cfg = spec.config;
        cfg.stream = stream;
        return solve_wc_penalty(problem, lambda, cfg);
      });
    case SolverKind::Ls:
      return run_sweep(problem, spec, [&](const Preference& lambda, std::uint64_t stream) {
        SolverConfig cfg = spec.config;
        cfg.stream = stream;
        return solve_ls(problem, lambda.weights(), cfg);
      });
    case SolverKind::WcPenaltyStochastic:
      throw InputError("stochastic sweep needs a StochasticProblem");
  }
  throw InputError("unknown solver kind");
}

SweepResult sweep_preferences(const StochasticProblem& problem, const SweepSpec& spec) {
  return run_sweep(problem.base(), spec, [&](const Preference& lambda, std::uint64_t stream) {
    SolverConfig cfg = spec.config;
    cfg.stream = stream;
    return solve_wc_penalty_stochastic(problem, lambda, cfg);
  });
}

}  // namespace ecmo
