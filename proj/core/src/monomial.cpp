#include "ecmo/monomial.hpp"

#include <algorithm>
#include <numeric>

namespace ecmo {

namespace {

// z^p by repeated multiplication; exponents are small non-negative ints.
double ipow(double base, int exp) {
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

MonomialFunction::MonomialFunction(int dimension, std::vector<Term> terms)
    : dim_(dimension), terms_(std::move(terms)) {
  if (dim_ <= 0) throw InputError("monomial dimension must be positive");
  for (const Term& t : terms_) {
    if (static_cast<int>(t.exponents.size()) != dim_)
      throw InputError("monomial term exponent vector must have length k");
    for (int p : t.exponents)
      if (p < 0) throw InputError("monomial exponents must be non-negative");
  }
}

MonomialFunction MonomialFunction::constant(int dimension, double value) {
  Term t;
  t.coeff = value;
  t.exponents.assign(dimension, 0);
  return MonomialFunction(dimension, {t});
}

int MonomialFunction::degree() const {
  int deg = 0;
  for (const Term& t : terms_)
    deg = std::max(deg, std::accumulate(t.exponents.begin(), t.exponents.end(), 0));
  return deg;
}

double MonomialFunction::value(const Vector& z) const {
  if (z.size() != dim_) throw InputError("monomial value: dimension mismatch");
  double sum = 0.0;
  for (const Term& t : terms_) {
    double prod = t.coeff;
    for (int i = 0; i < dim_; ++i) prod *= ipow(z[i], t.exponents[i]);
    sum += prod;
  }
  return sum;
}

Vector MonomialFunction::gradient(const Vector& z) const {
  if (z.size() != dim_) throw InputError("monomial gradient: dimension mismatch");
  Vector g = Vector::Zero(dim_);
  for (const Term& t : terms_) {
    for (int j = 0; j < dim_; ++j) {
      const int p = t.exponents[j];
      if (p == 0) continue;
      double prod = t.coeff * p * ipow(z[j], p - 1);
      for (int i = 0; i < dim_; ++i) {
        if (i == j) continue;
        prod *= ipow(z[i], t.exponents[i]);
      }
      g[j] += prod;
    }
  }
  return g;
}

MonomialFunction MonomialFunction::partial(int coordinate) const {
  if (coordinate < 0 || coordinate >= dim_)
    throw InputError("monomial partial: coordinate out of range");
  std::vector<Term> out;
  for (const Term& t : terms_) {
    const int p = t.exponents[coordinate];
    if (p == 0) continue;
    Term d;
    d.coeff = t.coeff * p;
    d.exponents = t.exponents;
    d.exponents[coordinate] = p - 1;
    out.push_back(std::move(d));
  }
  if (out.empty()) return constant(dim_, 0.0);
  return MonomialFunction(dim_, std::move(out));
}

MonomialFunction MonomialFunction::shifted(double constant) const {
  std::vector<Term> out = terms_;
  Term c;
  c.coeff = constant;
  c.exponents.assign(dim_, 0);
  out.push_back(std::move(c));
  return MonomialFunction(dim_, std::move(out));
}

Matrix MonomialFunction::quadratic_hessian() const {
  if (degree() > 2)
    throw InputError("quadratic_hessian requires a polynomial of degree <= 2");
  Matrix H = Matrix::Zero(dim_, dim_);
  for (const Term& t : terms_) {
    // Degree-2 terms are either z_i^2 or z_i * z_j.
    int first = -1, second = -1;
    for (int i = 0; i < dim_; ++i) {
      if (t.exponents[i] == 2) {
        first = second = i;
        break;
      }
      if (t.exponents[i] == 1) {
        (first < 0 ? first : second) = i;
      }
    }
    if (first < 0 || second < 0) continue;  // constant or affine term
    if (first == second) {
      H(first, first) += 2.0 * t.coeff;
    } else {
      H(first, second) += t.coeff;
      H(second, first) += t.coeff;
    }
  }
  return H;
}

}  // namespace ecmo
