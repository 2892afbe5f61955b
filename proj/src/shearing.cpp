#include "ratnerlab/shearing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ratnerlab/errors.hpp"
#include "ratnerlab/group_algebra.hpp"
#include "ratnerlab/tolerances.hpp"

namespace ratnerlab::shearing {

Mat2 DisplacementPolynomial::operator()(double t) const {
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = entry(i, j)(t);
  return m;
}

DisplacementPolynomial unipotent_displacement(const Mat2& q) {
  group::require_unit_determinant(q, tol::kDeterminant, "unipotent_displacement");
  const double a = q(0, 0) - 1.0, b = q(0, 1), c = q(1, 0), d = q(1, 1) - 1.0;
  return {{Polynomial{a, b}, Polynomial{b}, Polynomial{c, -(a - d), -b}, Polynomial{d, -b}}};
}

Mat2 geodesic_displacement(const Mat2& q, double t) {
  group::require_unit_determinant(q, tol::kDeterminant, "geodesic_displacement");
  if (!(std::abs(t) <= tol::kGeodesicTimeCap))
    fail(ErrorKind::MagnitudeOverflow, "|t| exceeds the geodesic time cap");
  Mat2 m = q - Mat2::Identity();
  m(0, 1) *= std::exp(-2.0 * t);
  m(1, 0) *= std::exp(2.0 * t);
  return m;
}

Divergence first_divergence(const DisplacementPolynomial& d, double L) {
  require(L > 0.0, ErrorKind::InvalidInput, "threshold must be positive");
  const Mat2 start = d(0.0);
  if (start.cwiseAbs().maxCoeff() >= L) fail(ErrorKind::InvalidInput, "displacement already exceeds L at t = 0");

  double best = kUnbounded;
  int best_index = -1;
  for (int e = 0; e < 4; ++e) {
    const Polynomial& p = d.entries[e];
    if (p.is_constant()) continue;
    for (double sign : {1.0, -1.0}) {
      const Polynomial shifted = p - Polynomial{sign * L};
      const auto roots = shifted.real_roots(0.0, shifted.root_bound());
      if (!roots.empty() && roots.front() < best) {
        best = roots.front();
        best_index = e;
      }
    }
  }
  if (best_index < 0) fail(ErrorKind::NoDivergence, "no entry ever reaches the threshold");
  return {best, best_index / 2 + 1, best_index % 2 + 1, d(best)};
}

std::vector<DivergenceRow> divergence_table(const DisplacementPolynomial& d, const std::vector<double>& times) {
  std::vector<DivergenceRow> rows;
  rows.reserve(times.size());
  for (double t : times) {
    const Mat2 m = d(t).cwiseAbs();
    Eigen::Index r = 0, c = 0;
    m.maxCoeff(&r, &c);
    rows.push_back({t, m, static_cast<int>(r) + 1, static_cast<int>(c) + 1});
  }
  return rows;
}

double polynomial_extension_factor(const Polynomial& f, double k, double l, double delta) {
  require(l > 0.0 && delta > 0.0, ErrorKind::InvalidInput, "extension factor needs l > 0, delta > 0");
  require(f.degree() <= 8, ErrorKind::InvalidInput, "degree above 8");
  if (f.is_constant()) return kUnbounded;
  const double C = f.max_abs(k, k + l);
  const double bound = (1.0 + delta) * C;
  double first = kUnbounded;
  for (double sign : {1.0, -1.0}) {
    const Polynomial shifted = f - Polynomial{sign * bound};
    const double hi = std::max(k + l, shifted.root_bound());
    const auto roots = shifted.real_roots(k + l, hi);
    if (!roots.empty()) first = std::min(first, roots.front());
  }
  if (std::isinf(first)) return kUnbounded;
  return (first - k) / l - 1.0;
}

JointDivergence joint_transverse_divergence(double r1, double r2) {
  const DisplacementPolynomial p1 = unipotent_displacement(group::v_matrix(r1));
  const DisplacementPolynomial p2 = unipotent_displacement(group::v_matrix(r2));
  const double gap = std::abs(p1.entry(1, 0).coefficient(2) - p2.entry(1, 0).coefficient(2));
  return {p1, p2, std::abs(r1 - r2) <= tol::kJointDiagonal, gap};
}

TransverseCoords transverse_component(const Mat2& q, double t) {
  group::require_unit_determinant(q, tol::kDeterminant, "transverse_component");
  const Mat2 m = group::u_matrix(-t) * q * group::u_matrix(t);
  if (!(m(1, 1) > 0.0)) {
    std::ostringstream os;
    os << "conjugate has bottom-right entry " << m(1, 1) << "; v^b a^a u^s needs it positive";
    fail(ErrorKind::FactorizationUndefined, os.str());
  }
  return {m(0, 1) / m(1, 1), -std::log(m(1, 1)), m(1, 0) / m(1, 1)};
}

Mat2 recompose(const TransverseCoords& c) {
  return group::v_matrix(c.beta) * group::a_matrix(c.alpha) * group::u_matrix(c.sigma);
}

}  // namespace ratnerlab::shearing
