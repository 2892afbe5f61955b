#pragma once

// Independent reference computations shared by the test suites.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "ratnerlab/rng.hpp"

namespace oracle {

// Random element of SL(n,R) with condition number at most max_cond.
inline Eigen::MatrixXd random_sl(ratnerlab::Rng& rng, int n, double max_cond = 50.0) {
  for (;;) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s(n - 1) <= 0 || s(0) / s(n - 1) > max_cond) continue;
    double det = m.determinant();
    if (det < 0) {
      m.row(0) *= -1.0;
      det = -det;
    }
    return m / std::pow(det, 1.0 / n);
  }
}

// Largest Im(gamma z) over primitive bottom rows (c, d). Im(gamma z) >= sqrt3/2
// forces c^2 y <= 2/sqrt3 and |c x + d| <= 2, which bounds the search.
inline double max_orbit_height(std::complex<double> z) {
  const double x = z.real(), y = z.imag();
  const int c_max = static_cast<int>(std::ceil(std::sqrt(2.0 / (std::sqrt(3.0) * y)))) + 1;
  double best = y;
  for (int c = 0; c <= c_max; ++c) {
    const auto centre = static_cast<long>(std::llround(-c * x));
    for (long d = centre - 3; d <= centre + 3; ++d) {
      if (std::gcd(static_cast<long>(c), d) != 1) continue;
      best = std::max(best, y / std::norm(static_cast<double>(c) * z + static_cast<double>(d)));
    }
  }
  return best;
}

// Rank of the column span of [a b] equals the ranks of a and b.
inline bool same_span(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol = 1e-8) {
  auto rank = [&](const Eigen::MatrixXd& m) {
    if (m.cols() == 0) return Eigen::Index{0};
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(tol);
    return lu.rank();
  };
  if (a.cols() == 0 || b.cols() == 0) return rank(a) == 0 && rank(b) == 0;
  Eigen::MatrixXd ab(a.rows(), a.cols() + b.cols());
  ab << a, b;
  const auto r = rank(ab);
  return r == rank(a) && r == rank(b);
}

// Normalized hyperbolic measure of the smoothed indicator of {y <= h} on F
// (linear ramp from 1 at h - w to 0 at h + w, h - w >= 1).
inline double ramp_indicator_average(double h, double w) {
  const double lo = h - w, hi = h + w;
  const double ramp = (hi * (1.0 / lo - 1.0 / hi) - std::log(hi / lo)) / (2.0 * w);
  const double area = std::numbers::pi / 3.0;
  return (area - 1.0 / lo + ramp) / area;
}

}  // namespace oracle
