#pragma once

#include "ecmo/problem.hpp"
#include "ecmo/rng.hpp"

namespace ecmo {

/// Noisy view of an ECMO problem. Every scalar value and every gradient
/// coordinate carries independent additive zero-mean Gaussian noise; a
/// mini-batch of size B averages it, so the sampled batch mean has standard
/// deviation sigma / sqrt(B). With sigma_f = sigma_h = 0 sampled evaluations
/// equal the deterministic ones exactly (no noise term is added at all).
class StochasticProblem {
 public:
  StochasticProblem(ECMOProblem base, double sigma_f, double sigma_h);

  const ECMOProblem& base() const { return base_; }
  double sigma_f() const { return sigma_f_; }
  double sigma_h() const { return sigma_h_; }
  bool noiseless() const { return sigma_f_ == 0.0 && sigma_h_ == 0.0; }

  /// Batch-mean sample of all blocks at z. The same batch feeds the value
  /// and the gradient of each f_s (resp. h_i); draws are keyed on
  /// (stream, iteration, block, index, coordinate) so identical seeds give
  /// identical sample streams regardless of scheduling.
  ProblemEval sample(const Vector& z, long long batch_objective, long long batch_constraint,
                     const RandomStream& rng, std::uint64_t iteration) const;

 private:
  ECMOProblem base_;
  double sigma_f_;
  double sigma_h_;
};

}  // namespace ecmo
