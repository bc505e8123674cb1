#include "ecmo/problem.hpp"

#include <algorithm>
#include <cmath>

#include "ecmo/rng.hpp"

namespace ecmo {

ECMOProblem::ECMOProblem(std::string name, int dimension, std::vector<ScalarFunction> objectives,
                         std::vector<ScalarFunction> constraints,
                         std::optional<BoundingBox> bounding_box)
    : name_(std::move(name)),
      dim_(dimension),
      objectives_(std::move(objectives)),
      constraints_(std::move(constraints)),
      box_(std::move(bounding_box)),
      shifts_(Vector::Zero(static_cast<int>(objectives_.size()))) {
  if (dim_ <= 0) throw InputError("problem dimension must be positive");
  if (objectives_.empty()) throw InputError("problem needs at least one objective");
  for (const ScalarFunction& f : objectives_)
    if (f.dimension() != dim_) throw InputError("objective dimension mismatch");
  for (const ScalarFunction& h : constraints_)
    if (h.dimension() != dim_) throw InputError("constraint dimension mismatch");
  if (box_ && static_cast<int>(box_->size()) != dim_)
    throw InputError("bounding box must have one interval per coordinate");
}

Vector ECMOProblem::eval_objectives(const Vector& z) const {
  if (z.size() != dim_) throw InputError("eval_objectives: dimension mismatch");
  Vector out(num_objectives());
  for (int s = 0; s < num_objectives(); ++s) out[s] = objectives_[s].value(z);
  return out;
}

Matrix ECMOProblem::objective_jacobian(const Vector& z) const {
  if (z.size() != dim_) throw InputError("objective_jacobian: dimension mismatch");
  Matrix J(num_objectives(), dim_);
  for (int s = 0; s < num_objectives(); ++s) J.row(s) = objectives_[s].gradient(z);
  return J;
}

Vector ECMOProblem::eval_constraints(const Vector& z) const {
  if (z.size() != dim_) throw InputError("eval_constraints: dimension mismatch");
  Vector out(num_constraints());
  for (int i = 0; i < num_constraints(); ++i) out[i] = constraints_[i].value(z);
  return out;
}

Matrix ECMOProblem::constraint_jacobian(const Vector& z) const {
  if (z.size() != dim_) throw InputError("constraint_jacobian: dimension mismatch");
  Matrix J(num_constraints(), dim_);
  for (int i = 0; i < num_constraints(); ++i) J.row(i) = constraints_[i].gradient(z);
  return J;
}

ECMOProblem ECMOProblem::with_name(std::string name) const {
  ECMOProblem out = *this;
  out.name_ = std::move(name);
  return out;
}

ProblemEval eval_all(const ECMOProblem& problem, const Vector& z) {
  ProblemEval e;
  e.F = problem.eval_objectives(z);
  e.JF = problem.objective_jacobian(z);
  e.h = problem.eval_constraints(z);
  e.Jh = problem.constraint_jacobian(z);
  return e;
}

MTBLProblem::MTBLProblem(std::string name, int p, int q,
                         std::vector<ScalarFunction> upper_objectives,
                         ScalarFunction lower_objective,
                         std::vector<ScalarFunction> lower_partials,
                         std::optional<BoundingBox> bounding_box)
    : name_(std::move(name)),
      p_(p),
      q_(q),
      upper_(std::move(upper_objectives)),
      g_(std::move(lower_objective)),
      partials_(std::move(lower_partials)),
      box_(std::move(bounding_box)) {
  if (p_ < 0 || q_ <= 0) throw InputError("MTBL needs p >= 0 and q >= 1");
  const int k = dimension();
  if (upper_.empty()) throw InputError("MTBL needs at least one upper objective");
  for (const ScalarFunction& f : upper_)
    if (f.dimension() != k) throw InputError("upper objective dimension mismatch");
  if (g_.dimension() != k) throw InputError("lower objective dimension mismatch");
  if (!partials_.empty()) {
    if (static_cast<int>(partials_.size()) != q_)
      throw InputError("lower_partials must have one entry per y coordinate");
    for (const ScalarFunction& h : partials_)
      if (h.dimension() != k) throw InputError("lower partial dimension mismatch");
  }
}

ECMOProblem mtbl_to_ecmo(const MTBLProblem& mtbl) {
  const int k = mtbl.dimension();
  std::vector<ScalarFunction> constraints;
  constraints.reserve(mtbl.lower_dim());
  if (mtbl.lower_objective().is_monomial()) {
    const MonomialFunction& g = mtbl.lower_objective().monomial();
    for (int i = 0; i < mtbl.lower_dim(); ++i)
      constraints.emplace_back(g.partial(mtbl.upper_dim() + i));
  } else if (!mtbl.lower_partials().empty()) {
    for (const ScalarFunction& h : mtbl.lower_partials()) constraints.push_back(h);
  } else {
    throw CapabilityError(
        "lower objective is native and exposes no y-partials; cannot reduce to ECMO");
  }
  return ECMOProblem(mtbl.name(), k, mtbl.upper_objectives(), std::move(constraints),
                     mtbl.bounding_box());
}

ECMOProblem shift_positive(const ECMOProblem& problem, const std::vector<Vector>& probes,
                           double margin) {
  if (probes.empty()) throw InputError("shift_positive needs a non-empty probe set");
  if (!(margin > 0.0)) throw InputError("shift_positive margin must be positive");
  std::vector<ScalarFunction> shifted;
  shifted.reserve(problem.num_objectives());
  Vector shifts(problem.num_objectives());
  for (int s = 0; s < problem.num_objectives(); ++s) {
    double lowest = std::numeric_limits<double>::infinity();
    for (const Vector& z : probes) lowest = std::min(lowest, problem.objectives()[s].value(z));
    const double c = std::max(0.0, margin - lowest);
    shifts[s] = c;
    shifted.push_back(c == 0.0 ? problem.objectives()[s] : problem.objectives()[s].shifted(c));
  }
  ECMOProblem out(problem.name(), problem.dimension(), std::move(shifted), problem.constraints(),
                  problem.bounding_box());
  out.shifts_ = problem.objective_shifts() + shifts;
  return out;
}

std::vector<Vector> default_probes(const ECMOProblem& problem, const Vector& z0, int box_samples,
                                   std::uint64_t seed) {
  std::vector<Vector> probes;
  probes.push_back(z0);
  if (problem.bounding_box() && box_samples > 0) {
    const BoundingBox& box = *problem.bounding_box();
    RandomStream rng(seed, /*stream=*/0x50524f4245ULL);
    for (int n = 0; n < box_samples; ++n) {
      Vector z(problem.dimension());
      for (int i = 0; i < problem.dimension(); ++i) {
        const double u = rng.uniform(RandomStream::key(n, i));
        z[i] = box[i][0] + u * (box[i][1] - box[i][0]);
      }
      probes.push_back(std::move(z));
    }
  }
  return probes;
}

bool GradCheckReport::within(double rel_tol, double abs_floor) const {
  for (const GradCheckEntry& e : per_coordinate)
    if (e.abs_err > abs_floor && e.rel_err > rel_tol) return false;
  return true;
}

GradCheckReport gradcheck(const ScalarFunction& fn, const Vector& z, double step) {
  if (!(step > 0.0)) throw InputError("gradcheck step must be positive");
  const int k = fn.dimension();
  if (z.size() != k) throw InputError("gradcheck: dimension mismatch");
  const Vector analytic = fn.gradient(z);
  GradCheckReport report;
  report.per_coordinate.resize(k);
  for (int i = 0; i < k; ++i) {
    Vector zp = z, zm = z;
    zp[i] += step;
    zm[i] -= step;
    const double fp = fn.value(zp);
    const double fm = fn.value(zm);
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw NumericError("gradcheck: non-finite evaluation at coordinate " + std::to_string(i));
    GradCheckEntry& e = report.per_coordinate[i];
    e.coordinate = i;
    e.analytic = analytic[i];
    e.numeric = (fp - fm) / (2.0 * step);
    e.abs_err = std::abs(e.analytic - e.numeric);
    const double scale = std::max(std::abs(e.analytic), std::abs(e.numeric));
    e.rel_err = scale > 0.0 ? e.abs_err / scale : 0.0;
    report.max_abs_err = std::max(report.max_abs_err, e.abs_err);
    report.max_rel_err = std::max(report.max_rel_err, e.rel_err);
  }
  return report;
}

}  // namespace ecmo
