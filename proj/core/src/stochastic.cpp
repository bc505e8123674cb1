#include "ecmo/stochastic.hpp"

#include <cmath>

namespace ecmo {

namespace {
constexpr std::uint64_t kObjectiveBlock = 1;
constexpr std::uint64_t kConstraintBlock = 2;
}  // namespace

double RandomStream::normal(std::uint64_t key) const {
  const double u1 = uniform(mix(key ^ 0x5851f42d4c957f2dULL));
  const double u2 = uniform(mix(key ^ 0x14057b7ef767814fULL));
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

StochasticProblem::StochasticProblem(ECMOProblem base, double sigma_f, double sigma_h)
    : base_(std::move(base)), sigma_f_(sigma_f), sigma_h_(sigma_h) {
  if (sigma_f_ < 0.0 || sigma_h_ < 0.0) throw InputError("noise sigmas must be non-negative");
}

ProblemEval StochasticProblem::sample(const Vector& z, long long batch_objective,
                                      long long batch_constraint, const RandomStream& rng,
                                      std::uint64_t iteration) const {
  ProblemEval e = eval_all(base_, z);
  if (noiseless()) return e;
  if (batch_objective < 1 || batch_constraint < 1)
    throw InputError("stochastic batch sizes must be >= 1");

  const int k = base_.dimension();
  if (sigma_f_ > 0.0) {
    const double scale = sigma_f_ / std::sqrt(static_cast<double>(batch_objective));
    for (int s = 0; s < base_.num_objectives(); ++s) {
      e.F[s] += scale * rng.normal(RandomStream::key(iteration, kObjectiveBlock, s, 0));
      for (int j = 0; j < k; ++j)
        e.JF(s, j) += scale * rng.normal(RandomStream::key(iteration, kObjectiveBlock, s, j + 1));
    }
  }
  if (sigma_h_ > 0.0) {
    const double scale = sigma_h_ / std::sqrt(static_cast<double>(batch_constraint));
    for (int i = 0; i < base_.num_constraints(); ++i) {
      e.h[i] += scale * rng.normal(RandomStream::key(iteration, kConstraintBlock, i, 0));
      for (int j = 0; j < k; ++j)
        e.Jh(i, j) += scale * rng.normal(RandomStream::key(iteration, kConstraintBlock, i, j + 1));
    }
  }
  return e;
}

}  // namespace ecmo
