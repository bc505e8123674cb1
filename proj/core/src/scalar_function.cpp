#include "ecmo/scalar_function.hpp"

namespace ecmo {

ScalarFunction::ScalarFunction(MonomialFunction m) : impl_(std::move(m)) {}

ScalarFunction ScalarFunction::native(int dimension, ValueFn value, GradientFn gradient) {
  if (dimension <= 0) throw InputError("native function dimension must be positive");
  if (!value || !gradient) throw InputError("native function needs value and gradient callbacks");
  return ScalarFunction(Native{dimension, std::move(value), std::move(gradient)});
}

int ScalarFunction::dimension() const {
  if (const auto* m = std::get_if<MonomialFunction>(&impl_)) return m->dimension();
  return std::get<Native>(impl_).dim;
}

bool ScalarFunction::is_monomial() const {
  return std::holds_alternative<MonomialFunction>(impl_);
}

const MonomialFunction& ScalarFunction::monomial() const {
  if (const auto* m = std::get_if<MonomialFunction>(&impl_)) return *m;
  throw CapabilityError("function is native, not a monomial sum");
}

double ScalarFunction::value(const Vector& z) const {
  if (const auto* m = std::get_if<MonomialFunction>(&impl_)) return m->value(z);
  const Native& n = std::get<Native>(impl_);
  if (z.size() != n.dim) throw InputError("native value: dimension mismatch");
  return n.value(z);
}

Vector ScalarFunction::gradient(const Vector& z) const {
  if (const auto* m = std::get_if<MonomialFunction>(&impl_)) return m->gradient(z);
  const Native& n = std::get<Native>(impl_);
  if (z.size() != n.dim) throw InputError("native gradient: dimension mismatch");
  return n.gradient(z);
}

ScalarFunction ScalarFunction::shifted(double constant) const {
  if (const auto* m = std::get_if<MonomialFunction>(&impl_))
    return ScalarFunction(m->shifted(constant));
  const Native& n = std::get<Native>(impl_);
  ValueFn v = n.value;
  return native(
      n.dim, [v, constant](const Vector& z) { return v(z) + constant; }, n.gradient);
}

}  // namespace ecmo
