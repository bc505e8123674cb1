#pragma once

#include "ecmo/types.hpp"

namespace ecmo {

/// Strictly positive simplex weight vector: lambda_s > 0, sum = 1 (within
/// 1e-12). Value type, validated on construction.
class Preference {
 public:
  explicit Preference(Vector lambda);

  static Preference uniform(int S);

  const Vector& weights() const { return lambda_; }
  int size() const { return static_cast<int>(lambda_.size()); }
  double operator[](int s) const { return lambda_[s]; }

 private:
  Vector lambda_;
};

}  // namespace ecmo
