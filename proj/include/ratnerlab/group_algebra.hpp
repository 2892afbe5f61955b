#pragma once

#include <string_view>

#include <Eigen/Dense>

namespace ratnerlab::group {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Largest absolute entry.
double max_norm(const Matrix& m);

// Check |det g - 1| <= tol; throws invalid-input otherwise.
void require_unit_determinant(const Matrix& g, double tol, std::string_view what);

enum class Sl2Class { IdentityLike, Unipotent, Hyperbolic, Elliptic, NoneOfThese };

std::string_view to_string(Sl2Class c);

// Classification of g in SL(2,R) by its trace: unipotent iff trace = 2
// (within the classification band), hyperbolic above it, elliptic strictly
// inside (-2, 2). Elements equal to +-I are reported as identity-like.
Sl2Class classify_sl2(const Eigen::Matrix2d& g);

// Commuting factors g = unip * hyp * ell of the real Jordan decomposition.
struct JordanTriple {
  Matrix unip;
  Matrix hyp;
  Matrix ell;
};

// Real Jordan decomposition of an invertible matrix.
//
// Eigenvalues are clustered (relative gap kEigenCluster), the semisimple part
// s is obtained by Newton iteration on the square-free polynomial vanishing
// on the cluster centres (every iterate is a polynomial in g, hence commutes
// with it), and s is split through its spectral projectors into modulus
// (hyperbolic) and phase (elliptic) parts. The unipotent part is g s^{-1}.
JordanTriple real_jordan_decompose(const Matrix& g);

// Spectral predicates used to validate decompositions.
bool is_unipotent(const Matrix& m, double tol);
bool is_hyperbolic(const Matrix& m, double tol);
bool is_elliptic(const Matrix& m, double tol);

// Terminating series: log g = sum_{k<l} (-1)^{k+1} (g-I)^k / k for unipotent g,
// exp X = sum_{k<l} X^k / k! for nilpotent X.
Matrix nilpotent_log(const Matrix& g);
Matrix unipotent_exp(const Matrix& x);

// One-parameter subgroups of SL(2,R).
Eigen::Matrix2d u_matrix(double t);  // [[1,0],[t,1]]
Eigen::Matrix2d a_matrix(double s);  // diag(e^s, e^-s)
Eigen::Matrix2d v_matrix(double r);  // [[1,r],[0,1]]

}  // namespace ratnerlab::group
