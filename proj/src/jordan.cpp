#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "ratnerlab/errors.hpp"
#include "ratnerlab/group_algebra.hpp"
#include "ratnerlab/tolerances.hpp"

namespace ratnerlab::group {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

double max_norm(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_unit_determinant(const Matrix& g, double tol, std::string_view what) {
  require(g.rows() == g.cols(), ErrorKind::InvalidInput, std::string(what) + ": matrix is not square");
  const double det = g.determinant();
  if (std::abs(det - 1.0) > tol) {
    std::ostringstream os;
    os << what << ": determinant " << det << " is not 1";
    fail(ErrorKind::InvalidInput, os.str());
  }
}

std::string_view to_string(Sl2Class c) {
  switch (c) {
    case Sl2Class::IdentityLike: return "identity-like";
    case Sl2Class::Unipotent: return "unipotent";
    case Sl2Class::Hyperbolic: return "hyperbolic";
    case Sl2Class::Elliptic: return "elliptic";
    case Sl2Class::NoneOfThese: return "none-of-these";
  }
  return "unknown";
}

Sl2Class classify_sl2(const Eigen::Matrix2d& g) {
  require_unit_determinant(g, tol::kDeterminant, "classify_sl2");
  const double band = tol::kClassify;
  if ((g - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= band ||
      (g + Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= band)
    return Sl2Class::IdentityLike;
  const double tr = g.trace();
  if (std::abs(tr - 2.0) <= band) return Sl2Class::Unipotent;
  if (tr > 2.0 + band) return Sl2Class::Hyperbolic;
  if (std::abs(tr) < 2.0 - band) return Sl2Class::Elliptic;
  return Sl2Class::NoneOfThese;
}

Eigen::Matrix2d u_matrix(double t) { return (Eigen::Matrix2d() << 1, 0, t, 1).finished(); }
Eigen::Matrix2d a_matrix(double s) {
  return (Eigen::Matrix2d() << std::exp(s), 0, 0, std::exp(-s)).finished();
}
Eigen::Matrix2d v_matrix(double r) { return (Eigen::Matrix2d() << 1, r, 0, 1).finished(); }

namespace {

// Cluster centres of the spectrum of m.
std::vector<cd> eigen_clusters(const Matrix& m) {
  Eigen::EigenSolver<Matrix> es(m, false);
  if (es.info() != Eigen::Success) {
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    std::ostringstream os;
    os << "eigenvalue solver failed (condition estimate " << sv(0) / sv(sv.size() - 1) << ")";
    fail(ErrorKind::NumericalFailure, os.str());
  }
  const Eigen::VectorXcd ev = es.eigenvalues();
  const auto n = static_cast<std::size_t>(ev.size());

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(ev(i)), std::abs(ev(j))});
      if (std::abs(ev(i) - ev(j)) <= tol::kEigenCluster * scale) parent[find(i)] = find(j);
    }

  std::vector<cd> centres;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
    roots.push_back(r);
    cd sum = 0;
    int count = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (find(j) == r) {
        sum += ev(j);
        ++count;
      }
    cd c = sum / static_cast<double>(count);
    if (std::abs(c.imag()) <= tol::kEigenCluster * std::max(1.0, std::abs(c))) c = c.real();
    centres.push_back(c);
  }
  return centres;
}

// Real coefficients (increasing degree) of prod (x - c) over conjugation-closed roots.
std::vector<double> real_poly_from_roots(const std::vector<cd>& roots) {
  std::vector<cd> p{1.0};
  for (const cd& r : roots) {
    std::vector<cd> q(p.size() + 1, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      q[k + 1] += p[k];
      q[k] -= r * p[k];
    }
    p = std::move(q);
  }
  std::vector<double> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = p[k].real();
  return out;
}

Matrix horner(const std::vector<double>& coeffs, const Matrix& x) {
  const auto n = x.rows();
  Matrix acc = Matrix::Zero(n, n);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * x;
    acc.diagonal().array() += *it;
  }
  return acc;
}

double condition_estimate(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  return sv(0) / sv(sv.size() - 1);
}

// Residual of the square-free polynomial of m's spectrum evaluated at m,
// relative to the natural scale. Near zero iff m is diagonalizable.
double squarefree_residual(const Matrix& m, const std::vector<cd>& centres) {
  const auto coeffs = real_poly_from_roots(centres);
  const double scale = std::max(1.0, max_norm(m));
  return max_norm(horner(coeffs, m)) / std::pow(scale, static_cast<double>(centres.size()));
}

}  // namespace

JordanTriple real_jordan_decompose(const Matrix& g) {
  require(g.rows() == g.cols() && g.rows() >= 1, ErrorKind::InvalidInput,
          "real_jordan_decompose: matrix must be square");
  require(g.allFinite(), ErrorKind::InvalidInput, "real_jordan_decompose: non-finite entries");
  const auto n = g.rows();
  const double cond = condition_estimate(g);
  require(std::isfinite(cond) && cond < 1e14, ErrorKind::InvalidInput,
          "real_jordan_decompose: matrix is not invertible");

  const std::vector<cd> centres = eigen_clusters(g);
  const std::vector<double> p = real_poly_from_roots(centres);
  std::vector<double> dp(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) dp[k - 1] = static_cast<double>(k) * p[k];

  // Newton iteration for the semisimple part.
  Matrix s = g;
  const double scale = std::max(1.0, max_norm(g));
  bool converged = false;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 100; ++it) {
    const Matrix ps = horner(p, s);
    const Matrix dps = horner(dp, s);
    Eigen::PartialPivLU<Matrix> lu(dps);
    const Matrix step = lu.solve(ps);
    if (!step.allFinite()) break;
    s -= step;
    const double size = max_norm(step);
    // Quadratic convergence ends at rounding level; stop once the steps are
    // tiny or have stopped shrinking.
    if (size <= 1e-15 * scale || (size <= 1e-9 * scale && size > 0.5 * previous)) {
      converged = true;
      break;
    }
    previous = size;
  }
  if (!converged) {
    std::ostringstream os;
    os << "semisimple-part iteration did not converge (condition estimate " << cond << ")";
    fail(ErrorKind::NumericalFailure, os.str());
  }

  // Spectral projectors of s.
  const CMatrix sc = s.cast<cd>();
  const CMatrix id = CMatrix::Identity(n, n);
  CMatrix hyp = CMatrix::Zero(n, n);
  CMatrix ell = CMatrix::Zero(n, n);
  for (std::size_t c = 0; c < centres.size(); ++c) {
    CMatrix proj = id;
    for (std::size_t d = 0; d < centres.size(); ++d) {
      if (d == c) continue;
      proj = proj * (sc - centres[d] * id) / (centres[c] - centres[d]);
    }
    const double modulus = std::abs(centres[c]);
    hyp += modulus * proj;
    ell += (centres[c] / modulus) * proj;
  }

  JordanTriple out;
  out.hyp = hyp.real();
  out.ell = ell.real();
  const Matrix semisimple = out.hyp * out.ell;
  out.unip = g * semisimple.inverse();
  if (!out.unip.allFinite() || !out.hyp.allFinite() || !out.ell.allFinite()) {
    std::ostringstream os;
    os << "non-finite Jordan component (condition estimate " << cond << ")";
    fail(ErrorKind::NumericalFailure, os.str());
  }
  return out;
}

bool is_unipotent(const Matrix& m, double tol) {
  const auto n = m.rows();
  const Matrix nil = m - Matrix::Identity(n, n);
  Matrix power = Matrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) power = power * nil;
  const double scale = std::max(1.0, max_norm(nil));
  return max_norm(power) <= tol * std::pow(scale, static_cast<double>(n));
}

bool is_hyperbolic(const Matrix& m, double tol) {
  const auto centres = eigen_clusters(m);
  for (const cd& c : centres)
    if (std::abs(c.imag()) > tol * std::max(1.0, std::abs(c)) || c.real() <= 0) return false;
  return squarefree_residual(m, centres) <= std::sqrt(tol);
}

bool is_elliptic(const Matrix& m, double tol) {
  const auto centres = eigen_clusters(m);
  for (const cd& c : centres)
    if (std::abs(std::abs(c) - 1.0) > tol) return false;
  return squarefree_residual(m, centres) <= std::sqrt(tol);
}

Matrix nilpotent_log(const Matrix& g) {
  require(g.rows() == g.cols(), ErrorKind::InvalidInput, "nilpotent_log: matrix must be square");
  const auto n = g.rows();
  const Matrix nil = g - Matrix::Identity(n, n);
  Matrix power = Matrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) power = power * nil;
  require(max_norm(power) <= tol::kNilpotent, ErrorKind::InvalidInput,
          "nilpotent_log: matrix is not unipotent");
  Matrix out = Matrix::Zero(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (Eigen::Index k = 1; k < n; ++k) {
    term = term * nil;
    out += ((k % 2 == 1) ? 1.0 : -1.0) / static_cast<double>(k) * term;
  }
  return out;
}

Matrix unipotent_exp(const Matrix& x) {
  require(x.rows() == x.cols(), ErrorKind::InvalidInput, "unipotent_exp: matrix must be square");
  const auto n = x.rows();
  Matrix power = Matrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) power = power * x;
  require(max_norm(power) <= tol::kNilpotent, ErrorKind::InvalidInput,
          "unipotent_exp: matrix is not nilpotent");
  Matrix out = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (Eigen::Index k = 1; k < n; ++k) {
    term = term * x / static_cast<double>(k);
    out += term;
  }
  return out;
}

}  // namespace ratnerlab::group
