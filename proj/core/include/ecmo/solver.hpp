#pragma once

#include <optional>

#include "ecmo/kkt.hpp"
#include "ecmo/penalty.hpp"
#include "ecmo/stochastic.hpp"

namespace ecmo {

struct SolverConfig {
  long long T = 1000;
  PenaltyParams params;          // schedule for the penalty solvers
  long long record_every = 100;  // trace thinning; the t=0 and final rows always land
  std::optional<double> stop_tol;  // early stop when ||K||^2 <= tol (off by default)
  Vector z0;
  std::uint64_t seed = 0;    // stochastic solves
  std::uint64_t stream = 0;  // per-solve RNG stream, e.g. the preference index
  std::optional<double> ls_lipschitz;  // LS step = 1/L; estimated when unset

  // Run-provenance echo carried into records so a replay can rebuild the
  // exact pipeline; the solvers themselves read noise levels from the
  // StochasticProblem and shifting happens before the solve.
  double sigma_f = 0.0;
  double sigma_h = 0.0;
  double shift_margin = 0.0;  // 0 = objectives were not shifted

  /// Config with the quarter-power schedule for the given budget.
  static SolverConfig with_schedule(long long T, Vector z0,
                                    double c_eta = kDefaultEtaScale,
                                    double c_uv = kDefaultPenaltyScale);
};

struct TraceRow {
  long long iter = 0;
  double P = 0.0;
  double kkt_sq = 0.0;
  double kkt_rho = 0.0;
  double kkt_z_norm = 0.0;
  double kkt_primal_norm = 0.0;
  double kkt_slack_norm = 0.0;
  double rho = 0.0;
  double h_norm = 0.0;
  double delta_violation = 0.0;  // max positive part of -delta before projection
};

struct Trace {
  std::vector<TraceRow> rows;
};

struct SolveResult {
  PenaltyState final_state;
  Vector final_F;
  double final_constraint_norm = 0.0;
  double avg_kkt_sq = 0.0;  // mean of ||K||^2 over iterations 0..T-1
  double min_kkt_sq = 0.0;
  Trace trace;
  SolverConfig config;  // echo
  Vector lambda;        // weights this solve ran with
  std::uint64_t seed = 0;
  long long iterations_run = 0;
  bool truncated = false;  // early stop fired, averages cover fewer than T steps
  double min_rho = 0.0;    // smallest rho_t along the trajectory
  double min_delta = 0.0;  // smallest post-projection slack along the trajectory
  bool ls_projected_start = false;   // z0 was infeasible and got projected
  bool ls_convexity_warning = false; // sampled midpoint-convexity check failed
};

/// Thrown when an iterate evaluates to a non-finite value. Carries the last
/// finite state and the iteration that failed.
class DivergedError : public std::runtime_error {
 public:
  DivergedError(std::string message, PenaltyState last, long long iteration)
      : std::runtime_error(std::move(message)),
        last_state(std::move(last)),
        iteration(iteration) {}

  PenaltyState last_state;
  long long iteration;
};

/// Projected gradient descent on the penalty P(theta) with fixed eta, u, v:
/// theta_{t+1} = proj_C(theta_t - eta grad P(theta_t)), C = R x R^k x R_+^S.
/// Duals and the KKT residual are evaluated at every iteration; the result
/// carries their running average and the thinned trace. Deterministic.
SolveResult solve_wc_penalty(const ECMOProblem& problem, const Preference& lambda,
                             const SolverConfig& config);

/// Same loop with mini-batch gradients: each iteration draws fresh batches
/// per objective and per constraint, and the sampled value and sampled
/// gradient of a block come from the same batch. The KKT residual in the
/// trace uses noiseless evaluations. Reproducible for a fixed seed; with
/// sigma = 0 the trajectory equals the deterministic solver exactly.
SolveResult solve_wc_penalty_stochastic(const StochasticProblem& problem,
                                        const Preference& lambda, const SolverConfig& config);

/// Projected gradient descent on the linear scalarization sum_s lambda_s f_s
/// over the affine feasible set {Az = b} with step 1 / L. Requires affine
/// constraints of full row rank; lambda may contain zeros here. Iterates
/// stay feasible to 1e-10.
SolveResult solve_ls(const ECMOProblem& problem, const Vector& lambda_simplex,
                     const SolverConfig& config);

/// Euclidean projection onto {z : Az = b}: w - A^T (A A^T)^{-1} (A w - b).
/// Throws InputError when A is rank deficient.
Vector project_affine(const Matrix& A, const Vector& b, const Vector& w);

/// Extract (A, b) from a problem whose constraints are all affine monomials;
/// throws InputError("constraints must be affine") otherwise.
std::pair<Matrix, Vector> affine_constraints(const ECMOProblem& problem);

}  // namespace ecmo
