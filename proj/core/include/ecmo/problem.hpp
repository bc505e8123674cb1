#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ecmo/scalar_function.hpp"

namespace ecmo {

using BoundingBox = std::vector<std::array<double, 2>>;

/// Equality constrained multi-objective problem:
///   min F(z) = (f_1(z), ..., f_S(z))  s.t.  h_i(z) = 0, i = 1..q.
/// Immutable after construction; evaluations are re-entrant.
class ECMOProblem {
 public:
  ECMOProblem(std::string name, int dimension, std::vector<ScalarFunction> objectives,
              std::vector<ScalarFunction> constraints,
              std::optional<BoundingBox> bounding_box = std::nullopt);

  const std::string& name() const { return name_; }
  int dimension() const { return dim_; }            // k
  int num_objectives() const { return static_cast<int>(objectives_.size()); }  // S
  int num_constraints() const { return static_cast<int>(constraints_.size()); }  // q

  const std::vector<ScalarFunction>& objectives() const { return objectives_; }
  const std::vector<ScalarFunction>& constraints() const { return constraints_; }
  const std::optional<BoundingBox>& bounding_box() const { return box_; }

  /// Constants added by shift_positive, zero otherwise; subtract from
  /// objective values to report fronts in the original coordinates.
  const Vector& objective_shifts() const { return shifts_; }

  Vector eval_objectives(const Vector& z) const;
  Matrix objective_jacobian(const Vector& z) const;   // S x k
  Vector eval_constraints(const Vector& z) const;
  Matrix constraint_jacobian(const Vector& z) const;  // q x k

  ECMOProblem with_name(std::string name) const;

 private:
  friend ECMOProblem shift_positive(const ECMOProblem&, const std::vector<Vector>&, double);

  std::string name_;
  int dim_;
  std::vector<ScalarFunction> objectives_;
  std::vector<ScalarFunction> constraints_;
  std::optional<BoundingBox> box_;
  Vector shifts_;
};

/// All four blocks evaluated at one point; shared by the penalty gradient,
/// the KKT residual and the solvers so each z is visited once.
struct ProblemEval {
  Vector F;   // S
  Matrix JF;  // S x k
  Vector h;   // q
  Matrix Jh;  // q x k
};

ProblemEval eval_all(const ECMOProblem& problem, const Vector& z);

/// Multi-task bilevel problem over z = (x, y), x in R^p, y in R^q:
///   min F(x, y)  s.t.  y in argmin_y g(x, y).
/// For a native lower objective the per-coordinate partials dg/dy_i must be
/// supplied explicitly (each a ScalarFunction over z with its own gradient).
class MTBLProblem {
 public:
  MTBLProblem(std::string name, int p, int q, std::vector<ScalarFunction> upper_objectives,
              ScalarFunction lower_objective,
              std::vector<ScalarFunction> lower_partials = {},
              std::optional<BoundingBox> bounding_box = std::nullopt);

  const std::string& name() const { return name_; }
  int upper_dim() const { return p_; }
  int lower_dim() const { return q_; }
  int dimension() const { return p_ + q_; }
  const std::vector<ScalarFunction>& upper_objectives() const { return upper_; }
  const ScalarFunction& lower_objective() const { return g_; }
  const std::vector<ScalarFunction>& lower_partials() const { return partials_; }
  const std::optional<BoundingBox>& bounding_box() const { return box_; }

 private:
  std::string name_;
  int p_, q_;
  std::vector<ScalarFunction> upper_;
  ScalarFunction g_;
  std::vector<ScalarFunction> partials_;  // empty unless g is native
  std::optional<BoundingBox> box_;
};

/// Reduce a bilevel problem with convex lower level to its first-order
/// stationarity form: constraints h_i(z) = dg/dy_i(z) = 0 over z = (x, y).
/// Monomial g is differentiated exactly; a native g must carry partials,
/// otherwise a CapabilityError is thrown.
ECMOProblem mtbl_to_ecmo(const MTBLProblem& mtbl);

/// Add c_s = max(0, margin - min_probes f_s) to every objective so that all
/// objectives exceed zero on the probe set. Shifts are recorded on the
/// returned problem (objective_shifts) so reports can undo them.
ECMOProblem shift_positive(const ECMOProblem& problem, const std::vector<Vector>& probes,
                           double margin);

/// Solver start point plus a uniform sample of the bounding box; the default
/// probe set for shift_positive.
std::vector<Vector> default_probes(const ECMOProblem& problem, const Vector& z0,
                                   int box_samples = 1000, std::uint64_t seed = 0);

struct GradCheckEntry {
  int coordinate = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
};

struct GradCheckReport {
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  std::vector<GradCheckEntry> per_coordinate;

  bool within(double rel_tol = 1e-6, double abs_floor = 1e-8) const;
};

/// Compare the analytic gradient against central differences
/// (f(z+h e_i) - f(z-h e_i)) / (2h). Throws NumericError (naming the
/// coordinate) when an evaluation is non-finite.
GradCheckReport gradcheck(const ScalarFunction& fn, const Vector& z, double step = 1e-5);

}  // namespace ecmo
