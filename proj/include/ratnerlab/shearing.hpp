#pragma once

#include <array>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "ratnerlab/polynomial.hpp"

namespace ratnerlab::shearing {

using Mat2 = Eigen::Matrix2d;

// u^{-t} q u^t - I as four polynomials in t, row-major.
struct DisplacementPolynomial {
  std::array<Polynomial, 4> entries;

  const Polynomial& entry(int row, int col) const { return entries[2 * row + col]; }
  Mat2 operator()(double t) const;
};

// With q - I = [[a, b], [c, d]]:
//   [[a + b t, b], [c - (a - d) t - b t^2, d - b t]].
DisplacementPolynomial unipotent_displacement(const Mat2& q);

// a^{-t} q a^t - I = [[a, b e^{-2t}], [c e^{2t}, d]].
// Throws magnitude-overflow for |t| > 300.
Mat2 geodesic_displacement(const Mat2& q, double t);

struct Divergence {
  double t_star;
  int row;  // 1-based position of the entry reaching L first
  int col;
  Mat2 at_t_star;
  double diagonal_sum() const { return std::abs(at_t_star(0, 0)) + std::abs(at_t_star(1, 1)); }
};

// Smallest t >= 0 where the max-norm of the displacement reaches L.
// Throws invalid-input if it is already >= L at t = 0, no-divergence if never.
Divergence first_divergence(const DisplacementPolynomial& d, double L);

struct DivergenceRow {
  double t;
  Mat2 abs_entries;
  int dominant_row;
  int dominant_col;
};
std::vector<DivergenceRow> divergence_table(const DisplacementPolynomial& d, const std::vector<double>& times);

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// Largest eps with sup_{[k, k + (1 + eps) l]} |f| <= (1 + delta) sup_{[k, k + l]} |f|;
// kUnbounded when the bound never breaks.
double polynomial_extension_factor(const Polynomial& f, double k, double l, double delta);

struct JointDivergence {
  DisplacementPolynomial first;   // component for v^{r1}
  DisplacementPolynomial second;  // component for v^{r2}
  bool diagonal;                  // |r1 - r2| <= 1e-10
  double leading_gap;             // difference of the t^2 coefficients
};

// Displacement of (v^{r1}, v^{r2}) under conjugation by (u^t, u^t) in
// SL(2,R) x SL(2,R).
JointDivergence joint_transverse_divergence(double r1, double r2);

// u^{-t} q u^t = v^beta a^alpha u^sigma.
struct TransverseCoords {
  double beta;
  double alpha;
  double sigma;
};

// Requires the bottom-right entry of the conjugate to be positive
// (it equals e^{-alpha}); throws factorization-undefined otherwise.
TransverseCoords transverse_component(const Mat2& q, double t);
Mat2 recompose(const TransverseCoords& c);

}  // namespace ratnerlab::shearing
