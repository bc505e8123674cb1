#pragma once

#include <optional>
#include <string>

#include "ecmo/pareto.hpp"
#include "ecmo/solver.hpp"

namespace ecmo {

/// What to sweep: either an explicit preference list or a lattice over the
/// strictly positive simplex, plus the per-solve config template.
struct SweepSpec {
  std::vector<Preference> preferences;  // used when non-empty
  int grid_resolution = 10;             // lattice spec otherwise
  double grid_floor = 0.01;
  SolverConfig config;
  int workers = 0;            // 0 = hardware concurrency
  double admission_tol = 1e-2;  // ||h(z_final)|| gate for front membership
};

enum class SolverKind { WcPenalty, WcPenaltyStochastic, Ls };

struct SweepItem {
  Vector lambda;
  std::optional<SolveResult> result;  // empty when the solve failed
  std::string error;                  // failure cause when empty result
  bool admitted = false;              // fed into the front assembly
};

struct SweepResult {
  std::vector<SweepItem> per_lambda;
  ParetoFront front;  // objective vectors reported in unshifted coordinates
};

/// Lattice over the strictly positive simplex:
///   lambda_s = floor + m_s (1 - S*floor) / resolution,  sum_s m_s = resolution,
/// enumerated in lexicographic order of m. resolution 0 yields the centroid.
/// The vertices put all free mass on one coordinate, which at S = 5,
/// floor = 0.01, resolution = 1 produces the 0.96 / 0.01 pattern.
std::vector<Preference> simplex_grid(int S, int resolution, double floor);

/// One solve per preference (identical config apart from lambda and the
/// derived RNG stream), assembled into a Pareto front over the final
/// objective vectors. Solves run on a bounded worker pool; the result is
/// independent of worker count and completion order. Diverged solves are
/// recorded per lambda and excluded from the front; the sweep itself fails
/// (DivergedError) only when every solve failed.
SweepResult sweep_preferences(const ECMOProblem& problem, const SweepSpec& spec, SolverKind kind);
SweepResult sweep_preferences(const StochasticProblem& problem, const SweepSpec& spec);

}  // namespace ecmo
