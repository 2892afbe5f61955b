#pragma once

#include <initializer_list>
#include <vector>

namespace ratnerlab {

// Real polynomial in one variable, coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs) : Polynomial(std::vector<double>(coeffs)) {}

  // Degree after dropping exact trailing zeros; the zero polynomial has degree -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<double>& coefficients() const { return c_; }
  double coefficient(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : 0.0; }

  double operator()(double t) const;
  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(double s) const;

  // Sorted real roots in the closed interval [lo, hi]. Root isolation by
  // recursion on the derivative: between consecutive critical points the
  // polynomial is monotone, so each sign change is bracketed and bisected.
  // An identically zero polynomial has no isolated roots (returns empty).
  std::vector<double> real_roots(double lo, double hi) const;

  // Cauchy bound: every real root lies in [-bound, bound].
  double root_bound() const;

  // Maximum of |p| on [lo, hi], attained at an endpoint or critical point.
  double max_abs(double lo, double hi) const;

 private:
  std::vector<double> c_;
};

}  // namespace ratnerlab
