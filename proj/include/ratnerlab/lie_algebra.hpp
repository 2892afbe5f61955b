#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ratnerlab::group {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// One structure-constant entry: [e_i, e_j] has coefficient c on e_k.
struct StructureConstant {
  int i;
  int j;
  int k;
  double c;
};

// Finite-dimensional real Lie algebra given by structure constants, with an
// optional faithful matrix realization (the "defining representation").
//
// Elements are coordinate column vectors. The adjoint operator follows the
// right-action convention: ad(x) y = [y, x], so that Ad(exp x) = exp(ad x)
// for Ad(g) Y = g^{-1} Y g, and [u, a] = 2u makes u a weight-2 vector of
// a = diag(1, -1) in sl(2, R).
class LieAlgebra {
 public:
  // Validates antisymmetry and the Jacobi identity.
  static LieAlgebra from_structure_constants(int dim, const std::vector<StructureConstant>& entries,
                                             std::vector<std::string> labels = {});
  // Structure constants computed from a linearly independent, bracket-closed
  // family of matrices; keeps the matrices as the defining representation.
  static LieAlgebra from_matrix_basis(std::vector<Matrix> basis, std::vector<std::string> labels);

  // Plain-text format:
  //   dim N
  //   label <i> <name>          (optional)
  //   <i> <j> <k> <c>           [e_i, e_j] contains c e_k, 0-based
  // '#' starts a comment. Missing antisymmetric partners are filled in.
  static LieAlgebra parse(std::istream& in);

  // Basis a, u, v with a = diag(1,-1), u = E21, v = E12.
  static LieAlgebra sl2();
  // Basis E_ij (i != j, row-major order) followed by E11-E22, E22-E33.
  static LieAlgebra sl3();
  // sl(2) + sl(2), basis (a,0), (u,0), (v,0), (0,a), (0,u), (0,v),
  // realized block-diagonally in 4x4 matrices.
  static LieAlgebra sl2_sum_sl2();

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }

  Vector bracket(const Vector& x, const Vector& y) const;
  // ad(x) y = [y, x].
  Matrix ad(const Vector& x) const;
  // Largest |c_ijk + c_jik| and Jacobi defect.
  double antisymmetry_residual() const;
  double jacobi_residual() const;

  bool has_matrix_realization() const { return !basis_.empty(); }
  const std::vector<Matrix>& basis_matrices() const { return basis_; }
  // Coordinates of a matrix in the realization; throws if not in the span.
  Vector coordinates(const Matrix& m) const;
  Matrix to_matrix(const Vector& x) const;

  // Ad(g): Y -> g^{-1} Y g in coordinates (requires a matrix realization).
  Matrix adjoint_of(const Matrix& g) const;
  // exp(ad x); Ad of the group element exp(x).
  Matrix adjoint_exp(const Vector& x) const;

 private:
  int dim_ = 0;
  std::vector<std::string> labels_;
  // consts_[i * dim + j] is the coordinate vector of [e_i, e_j].
  std::vector<Vector> consts_;
  std::vector<Matrix> basis_;
};

// Column basis of a subspace of a Lie algebra (coordinates).
struct SubalgebraBasis {
  Matrix basis;  // dim x m; m may be 0
  int size() const { return static_cast<int>(basis.cols()); }
};

struct WeightSpace {
  double weight;
  Matrix basis;  // dim x multiplicity
};

// Weight spaces of ad a, ordered by decreasing weight.
struct WeightDecomposition {
  std::vector<WeightSpace> spaces;
  const WeightSpace* find(double weight, double tol = 1e-8) const;
};

// Eigenspace decomposition of ad a: g_lambda = {x : [x, a] = lambda x}.
// Throws not-real-diagonalizable for complex or defective ad a.
WeightDecomposition weight_decomposition(const LieAlgebra& alg, const Vector& a);

// Largest component of [g_l1, g_l2] outside g_{l1+l2}, measured in the
// coordinates of the full weight basis.
double grading_residual(const LieAlgebra& alg, const WeightDecomposition& wd);

// Distance of v from span(basis), after orthonormalization.
double span_residual(const Matrix& basis, const Vector& v);
// Largest span residual of pairwise brackets of basis elements.
double closure_residual(const LieAlgebra& alg, const Matrix& basis);

// Sum of the generalized eigenspaces of Ad g for eigenvalues with |lambda| > 1.
SubalgebraBasis horospherical_subalgebra(const LieAlgebra& alg, const Matrix& adjoint_g);

// sum log|lambda| over eigenvalues of Ad g restricted to span(W); 0 for empty W.
// Throws not-invariant when Ad g does not preserve span(W).
double log_jacobian(const Matrix& adjoint_g, const SubalgebraBasis& w);

// The S~ subalgebra: all x with x (ad u)^k in g_- + g_0 + U for every k >= 0
// and every u in U. For non-abelian U the "every u" condition is enforced on
// the polarized words, which is what the quantifier over all u amounts to.
SubalgebraBasis compute_s_tilde(const LieAlgebra& alg, const Vector& a, const SubalgebraBasis& u);

// Membership test behind compute_s_tilde for a single element and a single
// u: largest residual of x (ad u)^k outside g_- + g_0 + U over 0 <= k <= dim.
double s_tilde_membership_residual(const LieAlgebra& alg, const WeightDecomposition& wd,
                                   const SubalgebraBasis& u, const Vector& x, const Vector& u_elem);

// One irreducible string of an sl(2)-module: rows w_{i,0}, ..., w_{i,lambda}.
struct Sl2String {
  int highest_weight;
  Matrix vectors;  // (lambda+1) x dim V, row j = w_{i,j}
};

struct Sl2ModuleStructure {
  std::vector<Sl2String> strings;
  std::vector<int> highest_weights() const;
};

// Decomposition of a real sl(2)-module given by the action matrices of a, u, v
// in the row convention (w -> w A). The returned rows satisfy
//   w_{i,j} A = (2j - lambda_i) w_{i,j}
//   w_{i,j} U = (lambda_i - j) w_{i,j+1}
//   w_{i,j} V = j w_{i,j-1}.
Sl2ModuleStructure sl2_module_structure(const Matrix& a_action, const Matrix& u_action,
                                        const Matrix& v_action);

// Largest violation of the three relations above for a computed structure.
double sl2_relation_residual(const Sl2ModuleStructure& s, const Matrix& a_action,
                             const Matrix& u_action, const Matrix& v_action);

}  // namespace ratnerlab::group
