#pragma once

#include "ecmo/preference.hpp"
#include "ecmo/problem.hpp"

namespace ecmo {

/// Augmented iterate theta = (rho, z, delta) of the penalty method. delta
/// holds the slack variables; after projection delta >= 0 componentwise.
struct PenaltyState {
  double rho = 0.0;
  Vector z;
  Vector delta;
};

/// Step size and penalty weights. The quarter-power schedule ties them to
/// the iteration budget: eta ~ T^(-1/4), u = v ~ T^(1/4); stochastic batch
/// sizes grow as T^(5/4) and stay constant over iterations.
struct PenaltyParams {
  double u = 1.0;
  double v = 1.0;
  double eta = 0.1;
  long long T = 1;
  long long batch_objective = 1;
  long long batch_constraint = 1;
};

/// Multipliers read off the current iterate: omega_s = v (lambda_s f_s(z) +
/// delta_s - rho) for the max-constraints, nu_i = u h_i(z) for the equality
/// constraints. Pointwise functions of the state, no storage of their own.
struct DualVariables {
  Vector omega;
  Vector nu;
};

// Default schedule constants. The fixtures in this repo need penalty weights
// of a few hundred before constraint violations drop under 1e-3, and plain
// projected gradient descent is only stable while eta*u stays below ~0.5 / L
// of the squared-constraint block. eta*u = c_eta * c_uv is T-invariant, so
// the pair below keeps every shipped fixture stable while u(T = 2e4) ~ 600.
inline constexpr double kDefaultEtaScale = 0.002;   // c_eta
inline constexpr double kDefaultPenaltyScale = 50.0;  // c_uv
inline constexpr double kDefaultBatchScale = 1.0;

PenaltyParams default_schedule(long long T, double c_eta = kDefaultEtaScale,
                               double c_uv = kDefaultPenaltyScale,
                               double c_batch = kDefaultBatchScale);

/// P(theta) = rho + (u/2) sum_i h_i(z)^2 + (v/2) sum_s (lambda_s f_s(z) +
/// delta_s - rho)^2. Always >= rho.
double penalty_value(const ECMOProblem& problem, const Preference& lambda, double u, double v,
                     const PenaltyState& theta);

/// Exact gradient of P, blocks shaped like the state:
///   d/drho   = 1 - v sum_s c_s
///   d/dz     = u sum_i h_i grad h_i + v sum_s c_s lambda_s grad f_s
///   d/ddelta = v c_s
/// with c_s = lambda_s f_s(z) + delta_s - rho. All three blocks share one
/// evaluation of the objective and constraint values and Jacobians.
PenaltyState penalty_gradient(const ECMOProblem& problem, const Preference& lambda, double u,
                              double v, const PenaltyState& theta);

/// Projection onto C = R x R^k x R_+^S: clamps delta at zero, leaves rho and
/// z untouched. Idempotent.
PenaltyState project_feasible(PenaltyState theta);

DualVariables recover_duals(const ECMOProblem& problem, const Preference& lambda, double u,
                            double v, const PenaltyState& theta);

// Shared-evaluation variants used by the solver loop (one eval per step).
double penalty_value_from_eval(const ProblemEval& eval, const Preference& lambda, double u,
                               double v, const PenaltyState& theta);
PenaltyState penalty_gradient_from_eval(const ProblemEval& eval, const Preference& lambda,
                                        double u, double v, const PenaltyState& theta);
DualVariables recover_duals_from_eval(const ProblemEval& eval, const Preference& lambda, double u,
                                      double v, const PenaltyState& theta);

/// max_s lambda_s f_s + delta_s - rho residuals; the common ingredient of
/// the value, gradient and duals.
Vector penalty_residuals(const Vector& F, const Preference& lambda, const PenaltyState& theta);

/// Start iterate for the penalty solvers: rho_0 = max(0, max_s lambda_s
/// f_s(z0)) and delta_0s = rho_0 - lambda_s f_s(z0), which starts every
/// max-constraint exactly tight and both penalty sums at zero.
PenaltyState initial_state(const ECMOProblem& problem, const Preference& lambda, const Vector& z0);

}  // namespace ecmo
