#include "ecmo/solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>

namespace ecmo {

SolverConfig SolverConfig::with_schedule(long long T, Vector z0, double c_eta, double c_uv) {
  SolverConfig cfg;
  cfg.T = T;
  cfg.params = default_schedule(T, c_eta, c_uv);
  cfg.z0 = std::move(z0);
  return cfg;
}

namespace {

// One projected-gradient run over the penalty objective. `sampled_eval`
// supplies the evaluation the gradient is computed from; the exact eval
// always feeds the KKT metric and the trace. The deterministic solver passes
// null and both coincide.
SolveResult run_penalty_loop(
    const ECMOProblem& problem, const Preference& lambda, const SolverConfig& config,
    const std::function<ProblemEval(long long, const Vector&)>& sampled_eval) {
  if (config.T < 1) throw InputError("solver needs T >= 1");
  if (config.record_every < 1) throw InputError("record_every must be >= 1");
  if (lambda.size() != problem.num_objectives())
    throw InputError("preference length must match the objective count");
  const double u = config.params.u;
  const double v = config.params.v;
  const double eta = config.params.eta;
  if (!(u > 0.0) || !(v > 0.0) || !(eta > 0.0))
    throw InputError("penalty parameters must be positive");

  PenaltyState theta = initial_state(problem, lambda, config.z0);
  PenaltyState last_finite = theta;

  SolveResult result;
  result.config = config;
  result.lambda = lambda.weights();
  result.seed = config.seed;
  result.min_rho = theta.rho;
  result.min_delta = theta.delta.size() > 0 ? theta.delta.minCoeff() : 0.0;

  double kkt_sum = 0.0;
  double kkt_min = std::numeric_limits<double>::infinity();
  long long steps_done = 0;
  double pre_projection_violation = 0.0;

  auto record = [&](long long t, const ProblemEval& eval, double P, const KKTResidual& K) {
    TraceRow row;
    row.iter = t;
    row.P = P;
    row.kkt_sq = K.sq_norm;
    row.kkt_rho = K.block_rho;
    row.kkt_z_norm = K.block_z.norm();
    row.kkt_primal_norm = K.block_primal.norm();
    row.kkt_slack_norm = K.block_slack.norm();
    row.rho = theta.rho;
    row.h_norm = eval.h.norm();
    row.delta_violation = pre_projection_violation;
    result.trace.rows.push_back(row);
  };

  long long t = 0;
  for (; t < config.T; ++t) {
    ProblemEval exact;
    double P;
    KKTResidual K;
    try {
      exact = eval_all(problem, theta.z);
      P = penalty_value_from_eval(exact, lambda, u, v, theta);
      const DualVariables duals = recover_duals_from_eval(exact, lambda, u, v, theta);
      K = kkt_residual_from_eval(exact, lambda, theta.rho, duals.omega, duals.nu);
    } catch (const NumericError& err) {
      throw DivergedError(std::string("diverged at iteration ") + std::to_string(t) + ": " +
                              err.what(),
                          last_finite, t);
    }
    last_finite = theta;

    kkt_sum += K.sq_norm;
    kkt_min = std::min(kkt_min, K.sq_norm);
    ++steps_done;
    if (t % config.record_every == 0) record(t, exact, P, K);

    if (config.stop_tol && K.sq_norm <= *config.stop_tol) {
      result.truncated = true;
      if (t % config.record_every != 0) record(t, exact, P, K);
      break;
    }

    PenaltyState grad;
    try {
      if (sampled_eval) {
        const ProblemEval sampled = sampled_eval(t, theta.z);
        grad = penalty_gradient_from_eval(sampled, lambda, u, v, theta);
      } else {
        grad = penalty_gradient_from_eval(exact, lambda, u, v, theta);
      }
    } catch (const NumericError& err) {
      throw DivergedError(std::string("diverged at iteration ") + std::to_string(t) + ": " +
                              err.what(),
                          last_finite, t);
    }

    theta.rho -= eta * grad.rho;
    theta.z -= eta * grad.z;
    theta.delta -= eta * grad.delta;
    pre_projection_violation =
        theta.delta.size() > 0 ? std::max(0.0, -theta.delta.minCoeff()) : 0.0;
    theta = project_feasible(std::move(theta));

    result.min_rho = std::min(result.min_rho, theta.rho);
    if (theta.delta.size() > 0)
      result.min_delta = std::min(result.min_delta, theta.delta.minCoeff());
  }

  // Final row at the post-update state (not part of the averaged metric).
  if (!result.truncated) {
    try {
      const ProblemEval exact = eval_all(problem, theta.z);
      const double P = penalty_value_from_eval(exact, lambda, u, v, theta);
      const DualVariables duals = recover_duals_from_eval(exact, lambda, u, v, theta);
      const KKTResidual K = kkt_residual_from_eval(exact, lambda, theta.rho, duals.omega, duals.nu);
      record(config.T, exact, P, K);
      result.final_F = exact.F;
      result.final_constraint_norm = exact.h.norm();
    } catch (const NumericError& err) {
      throw DivergedError(std::string("diverged at iteration ") + std::to_string(config.T) +
                              ": " + err.what(),
                          last_finite, config.T);
    }
  } else {
    result.final_F = problem.eval_objectives(theta.z);
    result.final_constraint_norm = problem.eval_constraints(theta.z).norm();
  }

  result.final_state = std::move(theta);
  result.avg_kkt_sq = kkt_sum / static_cast<double>(steps_done);
  result.min_kkt_sq = kkt_min;
  result.iterations_run = result.truncated ? steps_done : config.T;
  return result;
}

}  // namespace

SolveResult solve_wc_penalty(const ECMOProblem& problem, const Preference& lambda,
                             const SolverConfig& config) {
  return run_penalty_loop(problem, lambda, config, nullptr);
}

SolveResult solve_wc_penalty_stochastic(const StochasticProblem& problem,
                                        const Preference& lambda, const SolverConfig& config) {
  if (problem.noiseless())
    return run_penalty_loop(problem.base(), lambda, config, nullptr);
  const RandomStream rng(config.seed, config.stream);
  const long long batch_f = config.params.batch_objective;
  const long long batch_h = config.params.batch_constraint;
  auto sampler = [&problem, rng, batch_f, batch_h](long long t, const Vector& z) {
    return problem.sample(z, batch_f, batch_h, rng, static_cast<std::uint64_t>(t));
  };
  return run_penalty_loop(problem.base(), lambda, config, sampler);
}

std::pair<Matrix, Vector> affine_constraints(const ECMOProblem& problem) {
  const int q = problem.num_constraints();
  const int k = problem.dimension();
  Matrix A(q, k);
  Vector b(q);
  const Vector origin = Vector::Zero(k);
  for (int i = 0; i < q; ++i) {
    const ScalarFunction& h = problem.constraints()[i];
    if (!h.is_monomial() || !h.monomial().is_affine())
      throw InputError("constraints must be affine");
    // h(z) = c0 + a.z ; the feasible set is a.z = -c0.
    A.row(i) = h.gradient(origin);
    b[i] = -h.value(origin);
  }
  return {A, b};
}

Vector project_affine(const Matrix& A, const Vector& b, const Vector& w) {
  const int q = static_cast<int>(A.rows());
  if (A.cols() != w.size() || b.size() != q) throw InputError("project_affine: dimension mismatch");
  Eigen::ColPivHouseholderQR<Matrix> qr(A);
  if (qr.rank() < q) throw InputError("project_affine: constraint matrix is rank deficient");
  const Matrix gram = A * A.transpose();
  return w - A.transpose() * gram.llt().solve(A * w - b);
}

namespace {

// Largest Hessian eigenvalue of sum_s lambda_s f_s for quadratic monomial
// objectives, by power iteration.
double estimate_lipschitz(const ECMOProblem& problem, const Vector& lambda) {
  const int k = problem.dimension();
  Matrix H = Matrix::Zero(k, k);
  for (int s = 0; s < problem.num_objectives(); ++s) {
    const ScalarFunction& f = problem.objectives()[s];
    if (!f.is_monomial() || f.monomial().degree() > 2)
      throw InputError(
          "cannot estimate the LS step size: objectives are not quadratic monomials; "
          "supply the smoothness constant explicitly");
    H += lambda[s] * f.monomial().quadratic_hessian();
  }
  Vector x = Vector::Constant(k, 1.0 / std::sqrt(static_cast<double>(k)));
  double eig = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    Vector y = H * x;
    const double norm = y.norm();
    if (norm == 0.0) return 0.0;
    y /= norm;
    const double next = y.dot(H * y);
    const bool settled = std::abs(next - eig) <= 1e-8 * std::max(1.0, std::abs(next));
    eig = next;
    x = y;
    if (settled && iter > 2) break;
  }
  return std::abs(eig);
}

// Midpoint convexity probe on random segments inside the box (or a default
// cube). A failure only sets a warning flag; the LS guarantee is the
// caller's responsibility.
bool sampled_convexity_ok(const ECMOProblem& problem) {
  const int k = problem.dimension();
  BoundingBox box;
  if (problem.bounding_box()) {
    box = *problem.bounding_box();
  } else {
    box.assign(k, {-2.0, 2.0});
  }
  RandomStream rng(0x4c53ULL, 0);
  for (int n = 0; n < 100; ++n) {
    Vector a(k), b(k);
    for (int i = 0; i < k; ++i) {
      a[i] = box[i][0] + rng.uniform(RandomStream::key(n, 0, i)) * (box[i][1] - box[i][0]);
      b[i] = box[i][0] + rng.uniform(RandomStream::key(n, 1, i)) * (box[i][1] - box[i][0]);
    }
    const Vector mid = 0.5 * (a + b);
    for (const ScalarFunction& f : problem.objectives()) {
      const double lhs = f.value(mid);
      const double rhs = 0.5 * (f.value(a) + f.value(b));
      if (lhs > rhs + 1e-9 * std::max(1.0, std::abs(rhs))) return false;
    }
  }
  return true;
}

}  // namespace

SolveResult solve_ls(const ECMOProblem& problem, const Vector& lambda_simplex,
                     const SolverConfig& config) {
  if (config.T < 1) throw InputError("solver needs T >= 1");
  if (config.record_every < 1) throw InputError("record_every must be >= 1");
  const int S = problem.num_objectives();
  if (lambda_simplex.size() != S) throw InputError("preference length must match objectives");
  for (int s = 0; s < S; ++s)
    if (lambda_simplex[s] < 0.0) throw InputError("LS weights must be non-negative");
  if (std::abs(lambda_simplex.sum() - 1.0) > 1e-12) throw InputError("lambda must sum to 1");

  const auto [A, b] = affine_constraints(problem);
  {
    Eigen::ColPivHouseholderQR<Matrix> qr(A);
    if (qr.rank() < A.rows()) throw InputError("constraint matrix is rank deficient");
  }

  SolveResult result;
  result.config = config;
  result.lambda = lambda_simplex;
  result.ls_convexity_warning = !sampled_convexity_ok(problem);

  Vector z = config.z0;
  if (z.size() != problem.dimension()) throw InputError("z0 dimension mismatch");
  {
    const Vector projected = project_affine(A, b, z);
    if ((A * z - b).norm() > 1e-10) {
      result.ls_projected_start = true;
      z = projected;
    }
  }

  const double L = config.ls_lipschitz ? *config.ls_lipschitz
                                       : estimate_lipschitz(problem, lambda_simplex);
  if (!(L > 0.0)) throw InputError("LS needs a positive smoothness constant");
  const double eta = 1.0 / L;

  auto scalarized = [&](const ProblemEval& eval) { return lambda_simplex.dot(eval.F); };

  double kkt_sum = 0.0;
  double kkt_min = std::numeric_limits<double>::infinity();

  auto make_row = [&](long long t, const ProblemEval& eval, const Vector& grad) {
    TraceRow row;
    row.iter = t;
    row.P = scalarized(eval);  // for LS the objective column carries L_lambda
    row.kkt_z_norm = grad.norm();
    row.kkt_primal_norm = (A * z - b).norm();
    row.h_norm = row.kkt_primal_norm;
    row.kkt_sq = grad.squaredNorm() + row.kkt_primal_norm * row.kkt_primal_norm;
    row.rho = 0.0;
    return row;
  };

  long long t = 0;
  for (; t < config.T; ++t) {
    const ProblemEval eval = eval_all(problem, z);
    const Vector grad = eval.JF.transpose() * lambda_simplex;
    if (!eval.F.allFinite() || !grad.allFinite())
      throw DivergedError("diverged at iteration " + std::to_string(t),
                          PenaltyState{0.0, z, Vector::Zero(S)}, t);
    const TraceRow row = make_row(t, eval, grad);
    kkt_sum += row.kkt_sq;
    kkt_min = std::min(kkt_min, row.kkt_sq);
    if (t % config.record_every == 0) result.trace.rows.push_back(row);
    if (config.stop_tol && row.kkt_sq <= *config.stop_tol) {
      result.truncated = true;
      if (t % config.record_every != 0) result.trace.rows.push_back(row);
      break;
    }
    z = project_affine(A, b, z - eta * grad);
  }

  const ProblemEval eval = eval_all(problem, z);
  const Vector grad = eval.JF.transpose() * lambda_simplex;
  if (!result.truncated) result.trace.rows.push_back(make_row(config.T, eval, grad));

  result.final_state = PenaltyState{0.0, z, Vector::Zero(S)};
  result.final_F = eval.F;
  result.final_constraint_norm = (A * z - b).norm();
  const long long steps = result.truncated ? t + 1 : config.T;
  result.avg_kkt_sq = kkt_sum / static_cast<double>(std::max<long long>(steps, 1));
  result.min_kkt_sq = kkt_min;
  result.iterations_run = steps;
  return result;
}

}  // namespace ecmo
