#include "ecmo/penalty.hpp"

#include <cmath>

#include "ecmo/kkt.hpp"

namespace ecmo {

PenaltyParams default_schedule(long long T, double c_eta, double c_uv, double c_batch) {
  if (T < 1) throw InputError("schedule needs T >= 1");
  if (!(c_eta > 0.0) || !(c_uv > 0.0) || !(c_batch > 0.0))
    throw InputError("schedule constants must be positive");
  PenaltyParams p;
  p.T = T;
  const double t = static_cast<double>(T);
  p.eta = c_eta * std::pow(t, -0.25);
  p.u = p.v = c_uv * std::pow(t, 0.25);
  p.batch_objective = p.batch_constraint =
      static_cast<long long>(std::ceil(c_batch * std::pow(t, 1.25)));
  return p;
}

Vector penalty_residuals(const Vector& F, const Preference& lambda, const PenaltyState& theta) {
  if (F.size() != lambda.size() || theta.delta.size() != lambda.size())
    throw InputError("penalty residuals: dimension mismatch");
  return lambda.weights().cwiseProduct(F) + theta.delta - Vector::Constant(F.size(), theta.rho);
}

double penalty_value_from_eval(const ProblemEval& eval, const Preference& lambda, double u,
                               double v, const PenaltyState& theta) {
  const Vector c = penalty_residuals(eval.F, lambda, theta);
  const double value = theta.rho + 0.5 * u * eval.h.squaredNorm() + 0.5 * v * c.squaredNorm();
  if (!std::isfinite(value)) throw NumericError("penalty value is non-finite");
  return value;
}

PenaltyState penalty_gradient_from_eval(const ProblemEval& eval, const Preference& lambda,
                                        double u, double v, const PenaltyState& theta) {
  const Vector c = penalty_residuals(eval.F, lambda, theta);
  const Vector omega = v * c;
  const Vector nu = u * eval.h;
  PenaltyState grad;
  grad.rho = 1.0 - omega.sum();
  grad.z = kkt_stationarity_z(eval, omega, lambda.weights(), nu);
  grad.delta = omega;
  if (!std::isfinite(grad.rho) || !grad.z.allFinite() || !grad.delta.allFinite())
    throw NumericError("penalty gradient is non-finite");
  return grad;
}

DualVariables recover_duals_from_eval(const ProblemEval& eval, const Preference& lambda, double u,
                                      double v, const PenaltyState& theta) {
  DualVariables d;
  d.omega = v * penalty_residuals(eval.F, lambda, theta);
  d.nu = u * eval.h;
  return d;
}

double penalty_value(const ECMOProblem& problem, const Preference& lambda, double u, double v,
                     const PenaltyState& theta) {
  ProblemEval eval;
  eval.F = problem.eval_objectives(theta.z);
  eval.h = problem.eval_constraints(theta.z);
  return penalty_value_from_eval(eval, lambda, u, v, theta);
}

PenaltyState penalty_gradient(const ECMOProblem& problem, const Preference& lambda, double u,
                              double v, const PenaltyState& theta) {
  return penalty_gradient_from_eval(eval_all(problem, theta.z), lambda, u, v, theta);
}

PenaltyState project_feasible(PenaltyState theta) {
  theta.delta = theta.delta.cwiseMax(0.0);
  return theta;
}

DualVariables recover_duals(const ECMOProblem& problem, const Preference& lambda, double u,
                            double v, const PenaltyState& theta) {
  ProblemEval eval;
  eval.F = problem.eval_objectives(theta.z);
  eval.h = problem.eval_constraints(theta.z);
  return recover_duals_from_eval(eval, lambda, u, v, theta);
}

PenaltyState initial_state(const ECMOProblem& problem, const Preference& lambda,
                           const Vector& z0) {
  if (z0.size() != problem.dimension()) throw InputError("initial state: z0 dimension mismatch");
  const Vector lf = lambda.weights().cwiseProduct(problem.eval_objectives(z0));
  PenaltyState theta;
  theta.rho = std::max(0.0, lf.maxCoeff());
  theta.z = z0;
  theta.delta = Vector::Constant(lf.size(), theta.rho) - lf;
  return theta;
}

}  // namespace ecmo
