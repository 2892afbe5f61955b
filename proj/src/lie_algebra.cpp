#include "ratnerlab/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "ratnerlab/errors.hpp"
#include "ratnerlab/group_algebra.hpp"
#include "ratnerlab/tolerances.hpp"

namespace ratnerlab::group {

namespace {

Vector flatten(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

// Orthonormal basis of the column span of m (numerical rank).
Matrix orthonormal_span(const Matrix& m, double rel_tol = 1e-10) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double thresh = rel_tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > thresh) ++rank;
  return svd.matrixU().leftCols(rank);
}

// Orthonormal basis of the orthogonal complement of span(m) in R^n.
Matrix orthogonal_complement(const Matrix& m, Eigen::Index n) {
  const Matrix q = orthonormal_span(m);
  if (q.cols() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(q, Eigen::ComputeFullU);
  return svd.matrixU().rightCols(n - q.cols());
}

// Null space of m (columns), singular values below rel_tol * max(1, sigma_max).
Matrix null_space(const Matrix& m, double rel_tol) {
  const auto n = m.cols();
  if (m.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = rel_tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > thresh) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

struct Eigenspace {
  double value;
  Matrix basis;
};

// Real eigenspaces of m; throws not-real-diagonalizable for complex or
// defective spectra. With snap, eigenvalues near integers become integers.
std::vector<Eigenspace> real_eigenspaces(const Matrix& m, bool snap) {
  const auto n = m.rows();
  if (n == 0) return {};
  const double scale = std::max(1.0, max_norm(m));
  Eigen::EigenSolver<Matrix> es(m, false);
  require(es.info() == Eigen::Success, ErrorKind::NumericalFailure, "eigenvalue solver failed");
  const Eigen::VectorXcd ev = es.eigenvalues();

  std::vector<double> values;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(ev(i).imag()) > tol::kRealEigen * scale)
      fail(ErrorKind::NotRealDiagonalizable, "operator has a non-real eigenvalue");
    values.push_back(ev(i).real());
  }
  std::sort(values.begin(), values.end());

  // Group sorted eigenvalues.
  const double gap = 1e-6 * scale;
  std::vector<std::pair<double, int>> clusters;  // (mean, multiplicity)
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i + 1;
    while (j < values.size() && values[j] - values[j - 1] <= gap) ++j;
    double sum = 0;
    for (std::size_t k = i; k < j; ++k) sum += values[k];
    clusters.emplace_back(sum / static_cast<double>(j - i), static_cast<int>(j - i));
    i = j;
  }

  std::vector<Eigenspace> out;
  Eigen::Index total = 0;
  for (auto [value, mult] : clusters) {
    if (snap && std::abs(value - std::round(value)) <= tol::kWeightSnap * scale) value = std::round(value);
    Matrix shifted = m;
    shifted.diagonal().array() -= value;
    Matrix basis = null_space(shifted, 1e-7);
    if (basis.cols() < mult)
      fail(ErrorKind::NotRealDiagonalizable, "operator is not diagonalizable (defective eigenvalue)");
    basis = basis.leftCols(mult).eval();
    total += basis.cols();
    out.push_back({value, std::move(basis)});
  }
  require(total == n, ErrorKind::NotRealDiagonalizable, "eigenspaces do not span the space");
  return out;
}

}  // namespace

// --- LieAlgebra -------------------------------------------------------------

LieAlgebra LieAlgebra::from_structure_constants(int dim, const std::vector<StructureConstant>& entries,
                                                std::vector<std::string> labels) {
  require(dim >= 1, ErrorKind::InvalidInput, "Lie algebra dimension must be positive");
  LieAlgebra alg;
  alg.dim_ = dim;
  alg.consts_.assign(static_cast<std::size_t>(dim * dim), Vector::Zero(dim));
  std::set<std::pair<int, int>> present;
  for (const auto& e : entries) {
    require(e.i >= 0 && e.i < dim && e.j >= 0 && e.j < dim && e.k >= 0 && e.k < dim,
            ErrorKind::InvalidInput, "structure constant index out of range");
    alg.consts_[static_cast<std::size_t>(e.i * dim + e.j)](e.k) += e.c;
    present.insert({e.i, e.j});
  }
  for (auto [i, j] : present)
    if (!present.count({j, i}))
      alg.consts_[static_cast<std::size_t>(j * dim + i)] = -alg.consts_[static_cast<std::size_t>(i * dim + j)];

  if (labels.empty())
    for (int i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
  require(static_cast<int>(labels.size()) == dim, ErrorKind::InvalidInput, "label count mismatch");
  alg.labels_ = std::move(labels);

  require(alg.antisymmetry_residual() <= tol::kJacobi, ErrorKind::InvalidInput,
          "structure constants are not antisymmetric");
  require(alg.jacobi_residual() <= tol::kJacobi, ErrorKind::InvalidInput,
          "structure constants violate the Jacobi identity");
  return alg;
}

LieAlgebra LieAlgebra::from_matrix_basis(std::vector<Matrix> basis, std::vector<std::string> labels) {
  require(!basis.empty(), ErrorKind::InvalidInput, "empty matrix basis");
  const int dim = static_cast<int>(basis.size());
  const auto rows = basis.front().rows();
  Matrix stacked(basis.front().size(), dim);
  for (int i = 0; i < dim; ++i) {
    require(basis[i].rows() == rows && basis[i].cols() == rows, ErrorKind::InvalidInput,
            "basis matrices must be square of equal size");
    stacked.col(i) = flatten(basis[i]);
  }
  require(orthonormal_span(stacked).cols() == dim, ErrorKind::InvalidInput,
          "basis matrices are linearly dependent");

  LieAlgebra alg;
  alg.dim_ = dim;
  alg.basis_ = std::move(basis);
  if (labels.empty())
    for (int i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
  alg.labels_ = std::move(labels);
  alg.consts_.assign(static_cast<std::size_t>(dim * dim), Vector::Zero(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const Matrix br = alg.basis_[i] * alg.basis_[j] - alg.basis_[j] * alg.basis_[i];
      alg.consts_[static_cast<std::size_t>(i * dim + j)] = alg.coordinates(br);
    }
  return alg;
}

LieAlgebra LieAlgebra::parse(std::istream& in) {
  int dim = -1;
  std::vector<StructureConstant> entries;
  std::map<int, std::string> names;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (first == "dim") {
      require(static_cast<bool>(ls >> dim), ErrorKind::InvalidInput, where + ": expected 'dim N'");
    } else if (first == "label") {
      int idx;
      std::string name;
      require(static_cast<bool>(ls >> idx >> name), ErrorKind::InvalidInput,
              where + ": expected 'label i name'");
      names[idx] = name;
    } else {
      StructureConstant e{};
      try {
        e.i = std::stoi(first);
      } catch (const std::exception&) {
        fail(ErrorKind::InvalidInput, where + ": unrecognized token '" + first + "'");
      }
      require(static_cast<bool>(ls >> e.j >> e.k >> e.c), ErrorKind::InvalidInput,
              where + ": expected 'i j k c'");
      entries.push_back(e);
    }
  }
  require(dim > 0, ErrorKind::InvalidInput, "missing 'dim N' line");
  std::vector<std::string> labels;
  if (!names.empty()) {
    for (int i = 0; i < dim; ++i) labels.push_back(names.count(i) ? names[i] : "e" + std::to_string(i));
  }
  return from_structure_constants(dim, entries, std::move(labels));
}

namespace {
Matrix unit(int n, int i, int j) {
  Matrix m = Matrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}
}  // namespace

LieAlgebra LieAlgebra::sl2() {
  return from_matrix_basis({unit(2, 0, 0) - unit(2, 1, 1), unit(2, 1, 0), unit(2, 0, 1)}, {"a", "u", "v"});
}

LieAlgebra LieAlgebra::sl3() {
  std::vector<Matrix> basis;
  std::vector<std::string> labels;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) {
        basis.push_back(unit(3, i, j));
        labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      }
  basis.push_back(unit(3, 0, 0) - unit(3, 1, 1));
  labels.emplace_back("H12");
  basis.push_back(unit(3, 1, 1) - unit(3, 2, 2));
  labels.emplace_back("H23");
  return from_matrix_basis(std::move(basis), std::move(labels));
}

LieAlgebra LieAlgebra::sl2_sum_sl2() {
  const LieAlgebra base = sl2();
  std::vector<Matrix> basis;
  std::vector<std::string> labels;
  for (int block = 0; block < 2; ++block)
    for (int i = 0; i < 3; ++i) {
      Matrix m = Matrix::Zero(4, 4);
      m.block(2 * block, 2 * block, 2, 2) = base.basis_matrices()[i];
      basis.push_back(m);
      labels.push_back(base.labels()[i] + std::to_string(block + 1));
    }
  return from_matrix_basis(std::move(basis), std::move(labels));
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  Vector out = Vector::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim_; ++j)
      if (y(j) != 0.0) out += x(i) * y(j) * consts_[static_cast<std::size_t>(i * dim_ + j)];
  }
  return out;
}

Matrix LieAlgebra::ad(const Vector& x) const {
  Matrix out(dim_, dim_);
  for (int j = 0; j < dim_; ++j) out.col(j) = bracket(Vector::Unit(dim_, j), x);
  return out;
}

double LieAlgebra::antisymmetry_residual() const {
  double r = 0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      r = std::max(r, (consts_[static_cast<std::size_t>(i * dim_ + j)] +
                       consts_[static_cast<std::size_t>(j * dim_ + i)])
                          .cwiseAbs()
                          .maxCoeff());
  return r;
}

double LieAlgebra::jacobi_residual() const {
  double r = 0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        const Vector ei = Vector::Unit(dim_, i), ej = Vector::Unit(dim_, j), ek = Vector::Unit(dim_, k);
        const Vector s = bracket(ei, bracket(ej, ek)) + bracket(ej, bracket(ek, ei)) +
                         bracket(ek, bracket(ei, ej));
        r = std::max(r, s.cwiseAbs().maxCoeff());
      }
  return r;
}

Vector LieAlgebra::coordinates(const Matrix& m) const {
  require(has_matrix_realization(), ErrorKind::InvalidInput, "Lie algebra has no matrix realization");
  const auto& b0 = basis_.front();
  require(m.rows() == b0.rows() && m.cols() == b0.cols(), ErrorKind::InvalidInput,
          "matrix size does not match the realization");
  Matrix stacked(b0.size(), dim_);
  for (int i = 0; i < dim_; ++i) stacked.col(i) = flatten(basis_[i]);
  const Vector target = flatten(m);
  const Vector x = stacked.colPivHouseholderQr().solve(target);
  const double resid = (stacked * x - target).cwiseAbs().maxCoeff();
  require(resid <= 1e-9 * std::max(1.0, max_norm(m)), ErrorKind::InvalidInput,
          "matrix is not in the Lie algebra");
  return x;
}

Matrix LieAlgebra::to_matrix(const Vector& x) const {
  require(has_matrix_realization(), ErrorKind::InvalidInput, "Lie algebra has no matrix realization");
  Matrix m = Matrix::Zero(basis_.front().rows(), basis_.front().cols());
  for (int i = 0; i < dim_; ++i) m += x(i) * basis_[i];
  return m;
}

Matrix LieAlgebra::adjoint_of(const Matrix& g) const {
  require(has_matrix_realization(), ErrorKind::InvalidInput, "Lie algebra has no matrix realization");
  const Matrix ginv = g.inverse();
  Matrix out(dim_, dim_);
  for (int j = 0; j < dim_; ++j) out.col(j) = coordinates(ginv * basis_[j] * g);
  return out;
}

Matrix LieAlgebra::adjoint_exp(const Vector& x) const { return ad(x).exp(); }

// --- weights ----------------------------------------------------------------

const WeightSpace* WeightDecomposition::find(double weight, double tol) const {
  for (const auto& s : spaces)
    if (std::abs(s.weight - weight) <= tol) return &s;
  return nullptr;
}

WeightDecomposition weight_decomposition(const LieAlgebra& alg, const Vector& a) {
  require(a.size() == alg.dim(), ErrorKind::InvalidInput, "element dimension mismatch");
  auto spaces = real_eigenspaces(alg.ad(a), true);
  WeightDecomposition wd;
  for (auto& s : spaces) wd.spaces.push_back({s.value, std::move(s.basis)});
  std::sort(wd.spaces.begin(), wd.spaces.end(),
            [](const WeightSpace& l, const WeightSpace& r) { return l.weight > r.weight; });
  return wd;
}

double grading_residual(const LieAlgebra& alg, const WeightDecomposition& wd) {
  const int n = alg.dim();
  Matrix all(n, n);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> ranges;
  Eigen::Index col = 0;
  for (const auto& s : wd.spaces) {
    all.middleCols(col, s.basis.cols()) = s.basis;
    ranges.emplace_back(col, s.basis.cols());
    col += s.basis.cols();
  }
  const Eigen::PartialPivLU<Matrix> lu(all);
  double worst = 0;
  for (const auto& s1 : wd.spaces)
    for (const auto& s2 : wd.spaces) {
      const WeightSpace* target = wd.find(s1.weight + s2.weight, 1e-6);
      for (Eigen::Index i = 0; i < s1.basis.cols(); ++i)
        for (Eigen::Index j = 0; j < s2.basis.cols(); ++j) {
          Vector c = lu.solve(alg.bracket(s1.basis.col(i), s2.basis.col(j)));
          if (target) {
            const auto idx = static_cast<std::size_t>(target - wd.spaces.data());
            c.segment(ranges[idx].first, ranges[idx].second).setZero();
          }
          worst = std::max(worst, c.norm());
        }
    }
  return worst;
}

double span_residual(const Matrix& basis, const Vector& v) {
  const Matrix q = orthonormal_span(basis);
  if (q.cols() == 0) return v.norm();
  return (v - q * (q.transpose() * v)).norm();
}

double closure_residual(const LieAlgebra& alg, const Matrix& basis) {
  const Matrix q = orthonormal_span(basis);
  double worst = 0;
  for (Eigen::Index i = 0; i < q.cols(); ++i)
    for (Eigen::Index j = i + 1; j < q.cols(); ++j)
      worst = std::max(worst, span_residual(q, alg.bracket(q.col(i), q.col(j))));
  return worst;
}

SubalgebraBasis horospherical_subalgebra(const LieAlgebra& alg, const Matrix& adjoint_g) {
  const auto n = static_cast<Eigen::Index>(alg.dim());
  require(adjoint_g.rows() == n && adjoint_g.cols() == n, ErrorKind::InvalidInput,
          "adjoint operator has the wrong size");
  if (n == 0) return {Matrix(0, 0)};
  Eigen::EigenSolver<Matrix> es(adjoint_g, false);
  require(es.info() == Eigen::Success, ErrorKind::NumericalFailure, "eigenvalue solver failed");

  // Generalized eigenspace of the eigenvalues outside the unit circle: the
  // kernel of prod (Ad g - lambda) over those eigenvalues, counted with
  // multiplicity. Conjugate pairs make the product real.
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd A = adjoint_g.cast<std::complex<double>>();
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> l = es.eigenvalues()(i);
    if (std::abs(l) <= 1.0 + tol::kInvariance) continue;
    p = p * (A - l * Eigen::MatrixXcd::Identity(n, n));
    p /= std::max(1.0, p.cwiseAbs().maxCoeff());
    ++count;
  }
  if (count == 0) return {Matrix(n, 0)};
  const Eigen::JacobiSVD<Matrix> svd(p.real(), Eigen::ComputeFullV);
  return {svd.matrixV().rightCols(count)};
}

double log_jacobian(const Matrix& adjoint_g, const SubalgebraBasis& w) {
  if (w.size() == 0) return 0.0;
  require(adjoint_g.rows() == w.basis.rows(), ErrorKind::InvalidInput, "dimension mismatch");
  const Matrix image = adjoint_g * w.basis;
  const Matrix restricted = w.basis.colPivHouseholderQr().solve(image);
  const double resid = (w.basis * restricted - image).cwiseAbs().maxCoeff();
  require(resid <= tol::kInvariance * std::max(1.0, max_norm(adjoint_g)), ErrorKind::NotInvariant,
          "subspace is not invariant under Ad g");
  const Eigen::PartialPivLU<Matrix> lu(restricted);
  const Matrix& lu_m = lu.matrixLU();
  double sum = 0;
  for (Eigen::Index i = 0; i < lu_m.rows(); ++i) sum += std::log(std::abs(lu_m(i, i)));
  return sum;
}

// --- S~ -----------------------------------------------------------------------

namespace {

// Orthonormal basis of g_- + g_0 + U and the complementary annihilator.
Matrix transverse_annihilator(const WeightDecomposition& wd, const Matrix& u, Eigen::Index n) {
  Eigen::Index cols = u.cols();
  for (const auto& s : wd.spaces)
    if (s.weight <= 0) cols += s.basis.cols();
  Matrix v(n, cols);
  Eigen::Index c = 0;
  for (const auto& s : wd.spaces)
    if (s.weight <= 0) {
      v.middleCols(c, s.basis.cols()) = s.basis;
      c += s.basis.cols();
    }
  v.middleCols(c, u.cols()) = u;
  return orthogonal_complement(v, n);
}

}  // namespace

double s_tilde_membership_residual(const LieAlgebra& alg, const WeightDecomposition& wd,
                                   const SubalgebraBasis& u, const Vector& x, const Vector& u_elem) {
  const Matrix k = transverse_annihilator(wd, u.basis, alg.dim());
  const Matrix adu = alg.ad(u_elem.normalized());
  Vector y = x.normalized();
  double worst = 0;
  for (int power = 0; power <= alg.dim(); ++power) {
    worst = std::max(worst, (k.transpose() * y).norm());
    y = adu * y;
  }
  return worst;
}

SubalgebraBasis compute_s_tilde(const LieAlgebra& alg, const Vector& a, const SubalgebraBasis& u) {
  const int n = alg.dim();
  require(u.basis.rows() == n, ErrorKind::InvalidInput, "U basis has the wrong dimension");
  require(a.size() == n, ErrorKind::InvalidInput, "element dimension mismatch");
  const WeightDecomposition wd = weight_decomposition(alg, a);
  const Matrix ub = orthonormal_span(u.basis);
  require(ub.cols() == u.basis.cols(), ErrorKind::InvalidInput, "U basis is linearly dependent");

  // U must lie in the positive-weight part and be ad a-invariant.
  Matrix nonpositive(n, 0);
  for (const auto& s : wd.spaces)
    if (s.weight <= 0) {
      nonpositive.conservativeResize(n, nonpositive.cols() + s.basis.cols());
      nonpositive.rightCols(s.basis.cols()) = s.basis;
    }
  Matrix positive(n, 0);
  for (const auto& s : wd.spaces)
    if (s.weight > 0) {
      positive.conservativeResize(n, positive.cols() + s.basis.cols());
      positive.rightCols(s.basis.cols()) = s.basis;
    }
  const Matrix ada = alg.ad(a);
  const double scale = std::max(1.0, max_norm(ada));
  for (Eigen::Index i = 0; i < ub.cols(); ++i) {
    require(span_residual(positive, ub.col(i)) <= tol::kInvariance, ErrorKind::InvalidInput,
            "U is not contained in the positive-weight part");
    require(span_residual(ub, ada * ub.col(i)) <= tol::kInvariance * scale, ErrorKind::InvalidInput,
            "U is not ad a-invariant");
  }

  const Matrix annihilator = transverse_annihilator(wd, ub, n);
  if (annihilator.cols() == 0) return {Matrix::Identity(n, n)};

  std::vector<Matrix> adu;
  for (Eigen::Index i = 0; i < ub.cols(); ++i) adu.push_back(alg.ad(ub.col(i)));
  const auto m = static_cast<int>(adu.size());

  // Symmetrized word operators S_alpha, indexed by the letter counts alpha.
  std::map<std::vector<int>, Matrix> level{{std::vector<int>(m, 0), Matrix::Identity(n, n)}};
  std::vector<Matrix> constraints;
  for (int k = 0; k <= n; ++k) {
    bool any = false;
    for (const auto& [alpha, op] : level) {
      if (max_norm(op) <= 1e-13) continue;
      any = true;
      constraints.push_back(annihilator.transpose() * op);
    }
    if (!any || m == 0) break;
    std::map<std::vector<int>, Matrix> next;
    for (const auto& [alpha, op] : level) {
      for (int i = 0; i < m; ++i) {
        std::vector<int> beta = alpha;
        ++beta[i];
        auto [it, inserted] = next.try_emplace(beta, Matrix::Zero(n, n));
        it->second += adu[i] * op;
      }
    }
    level = std::move(next);
  }

  Eigen::Index rows = 0;
  for (const auto& c : constraints) rows += c.rows();
  Matrix stacked(rows, n);
  Eigen::Index r = 0;
  for (const auto& c : constraints) {
    stacked.middleRows(r, c.rows()) = c;
    r += c.rows();
  }
  return {null_space(stacked, 1e-9)};
}

// --- sl(2)-modules ---------------------------------------------------------------

std::vector<int> Sl2ModuleStructure::highest_weights() const {
  std::vector<int> out;
  for (const auto& s : strings) out.push_back(s.highest_weight);
  return out;
}

Sl2ModuleStructure sl2_module_structure(const Matrix& a_action, const Matrix& u_action,
                                        const Matrix& v_action) {
  const auto n = a_action.rows();
  require(a_action.cols() == n && u_action.rows() == n && u_action.cols() == n && v_action.rows() == n &&
              v_action.cols() == n,
          ErrorKind::InvalidInput, "action matrices must be square of equal size");
  const double scale = std::max({1.0, max_norm(a_action), max_norm(u_action), max_norm(v_action)});
  const Matrix& A = a_action;
  const Matrix& U = u_action;
  const Matrix& V = v_action;
  const double r1 = max_norm(U * A - A * U - 2.0 * U);
  const double r2 = max_norm(V * A - A * V + 2.0 * V);
  const double r3 = max_norm(V * U - U * V - A);
  require(std::max({r1, r2, r3}) <= tol::kInvariance * scale * scale, ErrorKind::NotAnSl2Module,
          "action matrices violate the sl(2) bracket relations");

  Sl2ModuleStructure out;
  if (n == 0) return out;
  // Column-vector forms of the row actions.
  const Matrix at = A.transpose(), ut = U.transpose(), vt = V.transpose();
  std::vector<Eigenspace> spaces;
  try {
    spaces = real_eigenspaces(at, true);
  } catch (const Error&) {
    fail(ErrorKind::NotAnSl2Module, "a does not act diagonalizably with real weights");
  }
  std::sort(spaces.begin(), spaces.end(), [](const auto& l, const auto& r) { return l.value > r.value; });

  Eigen::Index total = 0;
  for (const auto& s : spaces) {
    const Matrix kernel = null_space(ut * s.basis, 1e-8);
    if (kernel.cols() == 0) continue;
    const double lambda = s.value;
    require(lambda >= 0 && lambda == std::round(lambda), ErrorKind::NotAnSl2Module,
            "highest weight is not a natural number");
    const int hw = static_cast<int>(lambda);
    const Matrix tops = s.basis * kernel;
    for (Eigen::Index t = 0; t < tops.cols(); ++t) {
      Sl2String str{hw, Matrix(hw + 1, n)};
      Vector w = tops.col(t).normalized();
      str.vectors.row(hw) = w.transpose();
      for (int j = hw; j >= 1; --j) {
        w = vt * w / static_cast<double>(j);
        str.vectors.row(j - 1) = w.transpose();
      }
      total += hw + 1;
      out.strings.push_back(std::move(str));
    }
  }
  require(total == n, ErrorKind::NotAnSl2Module, "highest-weight strings do not span the module");
  return out;
}

double sl2_relation_residual(const Sl2ModuleStructure& s, const Matrix& a_action, const Matrix& u_action,
                             const Matrix& v_action) {
  double worst = 0;
  for (const auto& str : s.strings) {
    const int lam = str.highest_weight;
    for (int j = 0; j <= lam; ++j) {
      const Eigen::RowVectorXd w = str.vectors.row(j);
      worst = std::max(worst, (w * a_action - (2.0 * j - lam) * w).cwiseAbs().maxCoeff());
      const Eigen::RowVectorXd up = j < lam ? Eigen::RowVectorXd(str.vectors.row(j + 1))
                                            : Eigen::RowVectorXd::Zero(w.size());
      worst = std::max(worst, (w * u_action - static_cast<double>(lam - j) * up).cwiseAbs().maxCoeff());
      const Eigen::RowVectorXd down = j > 0 ? Eigen::RowVectorXd(str.vectors.row(j - 1))
                                            : Eigen::RowVectorXd::Zero(w.size());
      worst = std::max(worst, (w * v_action - static_cast<double>(j) * down).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace ratnerlab::group
