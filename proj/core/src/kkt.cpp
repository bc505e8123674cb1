#include "ecmo/kkt.hpp"

#include <cmath>

namespace ecmo {

Preference::Preference(Vector lambda) : lambda_(std::move(lambda)) {
  if (lambda_.size() < 1) throw InputError("preference needs at least one weight");
  for (int s = 0; s < lambda_.size(); ++s)
    if (!(lambda_[s] > 0.0)) throw InputError("preference weights must be strictly positive");
  if (std::abs(lambda_.sum() - 1.0) > 1e-12) throw InputError("lambda must sum to 1");
}

Preference Preference::uniform(int S) {
  if (S < 1) throw InputError("preference needs at least one weight");
  return Preference(Vector::Constant(S, 1.0 / S));
}

Vector kkt_stationarity_z(const ProblemEval& eval, const Vector& omega,
                          const Vector& lambda_weights, const Vector& nu) {
  Vector out = eval.JF.transpose() * omega.cwiseProduct(lambda_weights);
  if (nu.size() > 0) out += eval.Jh.transpose() * nu;
  return out;
}

KKTResidual kkt_residual_from_eval(const ProblemEval& eval, const Preference& lambda, double rho,
                                   const Vector& omega, const Vector& nu) {
  const int S = lambda.size();
  if (eval.F.size() != S || omega.size() != S)
    throw InputError("kkt residual: objective dimension mismatch");
  if (eval.h.size() != nu.size()) throw InputError("kkt residual: constraint dimension mismatch");

  KKTResidual r;
  r.block_rho = omega.sum() - 1.0;
  r.block_z = kkt_stationarity_z(eval, omega, lambda.weights(), nu);
  r.block_primal = eval.h;
  r.block_slack.resize(S);
  for (int s = 0; s < S; ++s)
    r.block_slack[s] = std::min(omega[s], rho - lambda[s] * eval.F[s]);
  r.sq_norm = r.block_rho * r.block_rho + r.block_z.squaredNorm() +
              r.block_primal.squaredNorm() + r.block_slack.squaredNorm();
  if (!std::isfinite(r.sq_norm)) throw NumericError("kkt residual is non-finite");
  return r;
}

KKTResidual kkt_residual(const ECMOProblem& problem, const Preference& lambda, double rho,
                         const Vector& z, const Vector& omega, const Vector& nu) {
  return kkt_residual_from_eval(eval_all(problem, z), lambda, rho, omega, nu);
}

Vector naive_ps_residual(const ECMOProblem& problem, const Vector& z, const Vector& alpha,
                         const Vector& v) {
  if (alpha.size() != problem.num_objectives())
    throw InputError("naive ps residual: alpha dimension mismatch");
  if (v.size() != problem.num_constraints())
    throw InputError("naive ps residual: v dimension mismatch");
  const ProblemEval eval = eval_all(problem, z);
  const int k = problem.dimension();
  Vector out(k + problem.num_constraints());
  out.head(k) = eval.JF.transpose() * alpha;
  if (v.size() > 0) out.head(k) += eval.Jh.transpose() * v;
  out.tail(problem.num_constraints()) = eval.h;
  return out;
}

}  // namespace ecmo
