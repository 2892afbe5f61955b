#include "ratnerlab/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "ratnerlab/errors.hpp"
#include "ratnerlab/rng.hpp"
#include "ratnerlab/tolerances.hpp"

namespace ratnerlab::quadforms {

Signature signature_of(const Eigen::MatrixXd& B) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorKind::NumericalFailure, "symmetric eigensolver failed");
  const double scale = B.cwiseAbs().maxCoeff();
  const double zero = tol::kSignatureZero * scale;
  Signature s{0, 0, 0};
  for (double l : es.eigenvalues()) {
    if (l > zero) ++s.p;
    else if (l < -zero) ++s.q;
    else ++s.z;
  }
  return s;
}

QuadraticForm::QuadraticForm(const Eigen::MatrixXd& B) : B_(0.5 * (B + B.transpose())), sig_{0, 0, 0} {
  require(B.rows() == B.cols() && B.rows() >= 1, ErrorKind::InvalidInput, "form matrix must be square");
  require(B.allFinite(), ErrorKind::InvalidInput, "form matrix has non-finite entries");
  sig_ = signature_of(B_);
}

QuadraticForm QuadraticForm::from_upper_triangle(const std::vector<double>& upper) {
  const auto m = upper.size();
  int n = 0;
  while (static_cast<std::size_t>(n * (n + 1) / 2) < m) ++n;
  if (m == 0 || static_cast<std::size_t>(n * (n + 1) / 2) != m) {
    std::ostringstream os;
    os << m << " coefficients do not form the upper triangle of a square matrix";
    fail(ErrorKind::InvalidInput, os.str());
  }
  Eigen::MatrixXd B(n, n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) B(i, j) = B(j, i) = upper[k++];
  return QuadraticForm(B);
}

double QuadraticForm::operator()(const Eigen::VectorXd& v) const {
  require(v.size() == B_.rows(), ErrorKind::InvalidInput, "vector dimension does not match the form");
  return v.dot(B_ * v);
}

double QuadraticForm::operator()(const IntVector& v) const {
  require(static_cast<Eigen::Index>(v.size()) == B_.rows(), ErrorKind::InvalidInput,
          "vector dimension does not match the form");
  const auto n = static_cast<Eigen::Index>(v.size());
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    double row = B_(i, i) * static_cast<double>(v[i]);
    for (Eigen::Index j = i + 1; j < n; ++j) row += 2.0 * B_(i, j) * static_cast<double>(v[j]);
    s += row * static_cast<double>(v[i]);
  }
  return s;
}

double QuadraticForm::bilinear(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const {
  require(v.size() == B_.rows() && w.size() == B_.rows(), ErrorKind::InvalidInput,
          "vector dimension does not match the form");
  return v.dot(B_ * w);
}

RationalMultiple is_rational_multiple(const QuadraticForm& Q, int H, double tol) {
  require(H >= 1 && tol > 0.0, ErrorKind::InvalidInput, "search needs H >= 1 and tol > 0");
  std::vector<double> coeffs;
  const auto& B = Q.matrix();
  for (Eigen::Index i = 0; i < B.rows(); ++i) {
    coeffs.push_back(B(i, i));
    for (Eigen::Index j = i + 1; j < B.cols(); ++j) coeffs.push_back(2.0 * B(i, j));
  }
  double ref = 0.0;
  for (double c : coeffs) ref = std::max(ref, std::abs(c));
  if (ref == 0.0) return {true, 1.0};

  const auto m_max = static_cast<std::int64_t>(std::ceil(H * ref));
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const double k = static_cast<double>(m) / ref;
    const bool ok = std::all_of(coeffs.begin(), coeffs.end(), [&](double c) {
      const double x = k * c;
      return std::abs(x - std::round(x)) <= tol;
    });
    if (ok) return {true, k};
  }
  return {false, std::numeric_limits<double>::quiet_NaN()};
}

bool so_q_member(const QuadraticForm& Q, const Eigen::MatrixXd& h, double tol) {
  require(h.rows() == Q.dim() && h.cols() == Q.dim(), ErrorKind::InvalidInput, "dimension mismatch");
  if (std::abs(h.determinant() - 1.0) > tol) fail(ErrorKind::InvalidInput, "det h is not 1");
  return (h * Q.matrix() * h.transpose() - Q.matrix()).cwiseAbs().maxCoeff() <= tol;
}

namespace {

// Visits the vectors with |v|_inf = s in decreasing lexicographic order until
// `visit` returns true.
bool scan_shell(int n, std::int64_t s, IntVector& v, const std::function<bool(const IntVector&)>& visit,
                int i = 0, bool has_max = false) {
  if (i == n) return visit(v);
  const auto k = static_cast<std::size_t>(i);
  if (i == n - 1 && !has_max) {
    for (std::int64_t x : {s, -s}) {
      v[k] = x;
      if (visit(v)) return true;
    }
    return false;
  }
  for (std::int64_t x = s; x >= -s; --x) {
    v[k] = x;
    if (scan_shell(n, s, v, visit, i + 1, has_max || x == s || x == -s)) return true;
  }
  return false;
}

}  // namespace

std::optional<SearchHit> oppenheim_search(const QuadraticForm& Q, double r, double eps, int N) {
  require(eps > 0.0 && N >= 1, ErrorKind::InvalidInput, "search needs eps > 0 and N >= 1");
  const int n = Q.dim();
  IntVector v(static_cast<std::size_t>(n), 0);
  std::optional<SearchHit> hit;
  for (std::int64_t s = 1; s <= N && !hit; ++s) {
    scan_shell(n, s, v, [&](const IntVector& w) {
      const double q = Q(w);
      if (std::abs(q - r) < eps) {
        hit = SearchHit{w, q};
        return true;
      }
      return false;
    });
  }
  return hit;
}

std::int64_t count_values(const QuadraticForm& Q, double a, double b, int N) {
  require(a < b && N >= 1, ErrorKind::InvalidInput, "count needs a < b and N >= 1");
  const int n = Q.dim();
  if (n * std::pow(static_cast<double>(N), n) > 1e9)
    fail(ErrorKind::BudgetExceeded, "lattice point budget of 10^9 exceeded");
  const auto N2 = static_cast<std::int64_t>(N) * N;
  const auto& B = Q.matrix();
  IntVector v(static_cast<std::size_t>(n), 0);
  std::int64_t count = 0;

  // partial[i] = sum over j < i, l < i of B_jl v_j v_l, built incrementally.
  std::function<void(int, std::int64_t, double)> rec = [&](int i, std::int64_t used, double partial) {
    if (i == n) {
      if (partial > a && partial < b) ++count;
      return;
    }
    const auto rest = N2 - used;
    const auto lim = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(rest))));
    double cross = 0.0;
    for (int j = 0; j < i; ++j) cross += 2.0 * B(i, j) * static_cast<double>(v[static_cast<std::size_t>(j)]);
    for (std::int64_t x = -lim; x <= lim; ++x) {
      if (x * x > rest) continue;
      v[static_cast<std::size_t>(i)] = x;
      const double xd = static_cast<double>(x);
      rec(i + 1, used + x * x, partial + xd * (cross + B(i, i) * xd));
    }
  };
  rec(0, 0, 0.0);
  return count;
}

VolumeEstimate estimate_volume(const QuadraticForm& Q, double a, double b, double N, std::size_t samples,
                               std::uint64_t seed, int strata) {
  require(a < b && N > 0.0 && samples >= 1 && strata >= 1, ErrorKind::InvalidInput,
          "volume estimate needs a < b, N > 0 and samples >= 1");
  const int n = Q.dim();
  const double nd = static_cast<double>(n);
  const double ball = std::pow(std::numbers::pi, nd / 2.0) / std::tgamma(nd / 2.0 + 1.0) * std::pow(N, nd);
  const auto per = std::max<std::size_t>(1, samples / static_cast<std::size_t>(strata));
  const double stratum_volume = ball / strata;

  double volume = 0.0, variance = 0.0;
  Eigen::VectorXd x(n);
  for (int s = 0; s < strata; ++s) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(s));
    std::size_t hits = 0;
    for (std::size_t k = 0; k < per; ++k) {
      // r^n uniform on the stratum, direction uniform on the sphere.
      const double u = (s + rng.uniform()) / strata;
      const double r = N * std::pow(u, 1.0 / nd);
      for (int i = 0; i < n; ++i) x(i) = rng.normal();
      x *= r / x.norm();
      const double q = x.dot(Q.matrix() * x);
      if (q > a && q < b) ++hits;
    }
    const double f = static_cast<double>(hits) / static_cast<double>(per);
    volume += stratum_volume * f;
    variance += stratum_volume * stratum_volume * f * (1.0 - f) / static_cast<double>(per);
  }
  return {volume, std::sqrt(variance)};
}

CountingTable counting_ratio_table(const QuadraticForm& Q, double a, double b, const std::vector<int>& Ns,
                                   std::size_t samples, std::uint64_t seed) {
  const Signature& sig = Q.signature();
  if (!(sig.z == 0 && sig.p >= 3 && sig.q >= 1))
    fail(ErrorKind::InvalidInput, "counting theorem needs a nondegenerate form with p >= 3, q >= 1");
  if (is_rational_multiple(Q, 100, 1e-8).found)
    fail(ErrorKind::InvalidInput, "form is a multiple of an integral form");
  require(!Ns.empty(), ErrorKind::InvalidInput, "no radii given");

  CountingTable t{{}, std::numeric_limits<double>::quiet_NaN(), sig.p + sig.q - 2};
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    const std::int64_t c = count_values(Q, a, b, Ns[i]);
    const VolumeEstimate v = estimate_volume(Q, a, b, Ns[i], samples, Rng::stream(seed, i).next());
    const double ratio = v.volume > 0.0 ? static_cast<double>(c) / v.volume
                                        : std::numeric_limits<double>::quiet_NaN();
    t.rows.push_back({Ns[i], c, v.volume, v.standard_error, ratio});
  }

  // Slope of log count against log N over rows with positive counts.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& r : t.rows) {
    if (r.count <= 0) continue;
    const double x = std::log(static_cast<double>(r.N)), y = std::log(static_cast<double>(r.count));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++m;
  }
  if (m >= 2 && m * sxx - sx * sx > 0.0) t.fitted_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return t;
}

GapAnalysis gap_analysis(int R) {
  require(R >= 1, ErrorKind::InvalidInput, "range must be at least 1");
  const double alpha = 1.0 + std::numbers::sqrt2;
  GapAnalysis g{std::numeric_limits<double>::infinity(), 0, 0, {}};
  auto consider = [&](std::int64_t p, std::int64_t q) {
    const double pd = static_cast<double>(p), qd = static_cast<double>(q);
    const double v = std::abs((pd - alpha * qd) * (pd + alpha * qd));
    if (v < g.min_abs) {
      g.min_abs = v;
      g.p = p;
      g.q = q;
    }
  };
  // |Q| is even in p and q, so the quadrant p, q >= 0 suffices.
  for (std::int64_t s = 1; s <= R; ++s) {
    for (std::int64_t q = 0; q <= s; ++q) consider(s, q);
    for (std::int64_t p = 0; p < s; ++p) consider(p, s);
    g.running.push_back({static_cast<int>(s), g.min_abs, g.p, g.q});
  }
  return g;
}

}  // namespace ratnerlab::quadforms
