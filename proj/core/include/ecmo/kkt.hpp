#pragma once

#include "ecmo/preference.hpp"
#include "ecmo/problem.hpp"

namespace ecmo {

/// Four-block residual of the KKT system of the weighted-Chebyshev problem
/// for a given preference lambda:
///   block_rho    = sum_s omega_s - 1
///   block_z      = sum_s omega_s lambda_s grad f_s(z) + sum_i nu_i grad h_i(z)
///   block_primal = h(z)
///   block_slack  = [ min{ omega_s, rho - lambda_s f_s(z) } ]_s
/// sq_norm is the squared l2 norm over all blocks; a point is epsilon-Pareto
/// stationary when sq_norm <= epsilon for some duals.
struct KKTResidual {
  double block_rho = 0.0;
  Vector block_z;
  Vector block_primal;
  Vector block_slack;
  double sq_norm = 0.0;
};

KKTResidual kkt_residual(const ECMOProblem& problem, const Preference& lambda, double rho,
                         const Vector& z, const Vector& omega, const Vector& nu);

KKTResidual kkt_residual_from_eval(const ProblemEval& eval, const Preference& lambda, double rho,
                                   const Vector& omega, const Vector& nu);

/// Stationarity block JF^T (omega .* lambda) + Jh^T nu, shared with the
/// penalty gradient so the dual-recovery identities hold bit for bit.
Vector kkt_stationarity_z(const ProblemEval& eval, const Vector& omega,
                          const Vector& lambda_weights, const Vector& nu);

/// Stacked residual (grad F(z) alpha + grad h(z) v ; h(z)) of the naive
/// Pareto-stationarity system. Kept only to reproduce the counterexamples
/// showing that this system can stay bounded away from zero at points that
/// are in fact Pareto stationary.
Vector naive_ps_residual(const ECMOProblem& problem, const Vector& z, const Vector& alpha,
                         const Vector& v);

}  // namespace ecmo
