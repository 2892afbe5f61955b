#include "ratnerlab/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace ratnerlab {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> r = c_;
  for (double& x : r) x *= s;
  return Polynomial(std::move(r));
}

double Polynomial::root_bound() const {
  if (c_.size() <= 1) return 0.0;
  const double lead = std::abs(c_.back());
  double m = 0.0;
  for (std::size_t k = 0; k + 1 < c_.size(); ++k) m = std::max(m, std::abs(c_[k]) / lead);
  return 1.0 + m;
}

namespace {

double bisect(const Polynomial& p, double a, double b) {
  double fa = p(a);
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = p(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> Polynomial::real_roots(double lo, double hi) const {
  std::vector<double> roots;
  if (c_.empty() || lo > hi) return roots;
  if (c_.size() == 1) return roots;  // nonzero constant
  if (c_.size() == 2) {
    const double r = -c_[0] / c_[1];
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }
  std::vector<double> knots{lo};
  for (double r : derivative().real_roots(lo, hi))
    if (r > knots.back()) knots.push_back(r);
  if (hi > knots.back()) knots.push_back(hi);

  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1];
    const double fa = (*this)(a), fb = (*this)(b);
    if (fa == 0.0) {
      if (roots.empty() || roots.back() != a) roots.push_back(a);
      continue;
    }
    if (fb == 0.0) continue;  // picked up as the left end of the next piece
    if ((fa < 0) != (fb < 0)) roots.push_back(bisect(*this, a, b));
  }
  if (!knots.empty() && (*this)(knots.back()) == 0.0 &&
      (roots.empty() || roots.back() != knots.back()))
    roots.push_back(knots.back());
  return roots;
}

double Polynomial::max_abs(double lo, double hi) const {
  double m = std::max(std::abs((*this)(lo)), std::abs((*this)(hi)));
  for (double r : derivative().real_roots(lo, hi)) m = std::max(m, std::abs((*this)(r)));
  return m;
}

}  // namespace ratnerlab
