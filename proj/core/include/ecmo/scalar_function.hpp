#pragma once

#include <functional>
#include <memory>
#include <variant>

#include "ecmo/monomial.hpp"

namespace ecmo {

/// A deterministic scalar field with an analytic gradient. Either an exact
/// monomial sum or an opaque "native" pair of callbacks. Instances are
/// immutable after construction; evaluation is re-entrant.
class ScalarFunction {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;

  ScalarFunction(MonomialFunction m);  // NOLINT: implicit by design

  static ScalarFunction native(int dimension, ValueFn value, GradientFn gradient);

  int dimension() const;
  bool is_monomial() const;

  /// Throws CapabilityError for native functions.
  const MonomialFunction& monomial() const;

  double value(const Vector& z) const;
  Vector gradient(const Vector& z) const;

  /// f + constant. Exact for monomials; wraps the callbacks otherwise.
  ScalarFunction shifted(double constant) const;

 private:
  struct Native {
    int dim;
    ValueFn value;
    GradientFn gradient;
  };
  explicit ScalarFunction(Native n) : impl_(std::move(n)) {}

  std::variant<MonomialFunction, Native> impl_;
};

}  // namespace ecmo
