#pragma once

#include <vector>

#include "ecmo/types.hpp"

namespace ecmo {

/// Sparse sum of monomial terms c * prod_i z_i^{p_i} with non-negative
/// integer exponents. Values and gradients are exact polynomials: the
/// derivative of c * prod z_i^{p_i} w.r.t. z_j is
/// c * p_j * z_j^{p_j-1} * prod_{i != j} z_i^{p_i}.
class MonomialFunction {
 public:
  struct Term {
    double coeff = 0.0;
    std::vector<int> exponents;  // one entry per coordinate
  };

  MonomialFunction(int dimension, std::vector<Term> terms);

  static MonomialFunction constant(int dimension, double value);

  int dimension() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Largest total degree over terms (0 for a constant or empty sum).
  int degree() const;
  bool is_affine() const { return degree() <= 1; }

  double value(const Vector& z) const;
  Vector gradient(const Vector& z) const;

  /// Exact partial derivative d/dz_j, again a monomial sum.
  MonomialFunction partial(int coordinate) const;

  /// f + constant (appends/merges a degree-0 term).
  MonomialFunction shifted(double constant) const;

  /// Constant Hessian of a polynomial with degree <= 2.
  /// Throws InputError when any term has degree > 2.
  Matrix quadratic_hessian() const;

 private:
  int dim_;
  std::vector<Term> terms_;
};

}  // namespace ecmo
