#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace ratnerlab::quadforms {

using IntVector = std::vector<std::int64_t>;

struct Signature {
  int p;  // positive eigenvalues
  int q;  // negative eigenvalues
  int z;  // zero eigenvalues (|lambda| <= 1e-10 |B|)
  bool nondegenerate() const { return z == 0; }
  bool indefinite() const { return p >= 1 && q >= 1; }
};

// Q(v) = v B v^T with B symmetric.
class QuadraticForm {
 public:
  // B is replaced by (B + B^T) / 2.
  explicit QuadraticForm(const Eigen::MatrixXd& B);
  // Row-major upper triangle of B: b11, b12, ..., b1n, b22, ..., bnn.
  static QuadraticForm from_upper_triangle(const std::vector<double>& upper);

  int dim() const { return static_cast<int>(B_.rows()); }
  const Eigen::MatrixXd& matrix() const { return B_; }
  const Signature& signature() const { return sig_; }

  double operator()(const Eigen::VectorXd& v) const;
  double operator()(const IntVector& v) const;
  // B(v, w) = v B w^T.
  double bilinear(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const;

 private:
  Eigen::MatrixXd B_;
  Signature sig_;
};

// Eigenvalue sign counts of a symmetric matrix, zero threshold 1e-10 |B|.
Signature signature_of(const Eigen::MatrixXd& B);

struct RationalMultiple {
  bool found;     // false: no scalar within the search bounds
  double k;       // smallest positive scalar found
  bool heuristic = true;
};

// Scalars k > 0 such that every coefficient of k Q (B_ii and 2 B_ij, i < j)
// lies within tol of an integer. With c the coefficient of largest magnitude,
// k c must itself be an integer m, so the candidates are k = m / |c| for
// m = 1, 2, ..., H |c|; the first that works is returned.
RationalMultiple is_rational_multiple(const QuadraticForm& Q, int H, double tol);

// h B h^T = B within tol (max-norm). Throws invalid-input if |det h - 1| > tol.
bool so_q_member(const QuadraticForm& Q, const Eigen::MatrixXd& h, double tol);

struct SearchHit {
  IntVector v;
  double value;
};

// Scans the shells |v|_inf = 1, 2, ..., N; within a shell, vectors come in
// decreasing lexicographic order (so (1, 1, 1) is the first vector of shell 1).
std::optional<SearchHit> oppenheim_search(const QuadraticForm& Q, double r, double eps, int N);

// #{v in Z^n : |v|_2 <= N, a < Q(v) < b}. Throws budget-exceeded when
// n N^n > 10^9.
std::int64_t count_values(const QuadraticForm& Q, double a, double b, int N);

struct VolumeEstimate {
  double volume;
  double standard_error;
};

// Volume of {x : |x|_2 <= N, a < Q(x) < b} by Monte Carlo, stratified into
// equal-volume radial shells; stratum i uses the stream (seed, i).
VolumeEstimate estimate_volume(const QuadraticForm& Q, double a, double b, double N,
                               std::size_t samples, std::uint64_t seed, int strata = 64);

struct CountingRow {
  int N;
  std::int64_t count;
  double volume;
  double standard_error;
  double ratio;  // count / volume; NaN when the volume estimate is 0
  bool ratio_defined() const { return ratio == ratio; }
};

struct CountingTable {
  std::vector<CountingRow> rows;
  double fitted_exponent;   // least-squares slope of log count against log N
  int expected_exponent;    // p + q - 2
};

// Requires signature p >= 3, q >= 1 and no rational multiple within
// H = 100, tol = 1e-8.
CountingTable counting_ratio_table(const QuadraticForm& Q, double a, double b, const std::vector<int>& Ns,
                                   std::size_t samples, std::uint64_t seed);

struct GapRow {
  int R;
  double min_abs;
  std::int64_t p;
  std::int64_t q;
};

struct GapAnalysis {
  double min_abs;
  std::int64_t p;
  std::int64_t q;
  std::vector<GapRow> running;  // one row per R' = 1..R
};

// |x^2 - (3 + 2 sqrt2) y^2| over 0 < max(|p|, |q|) <= R, evaluated as
// (p - alpha q)(p + alpha q) with alpha = 1 + sqrt2.
GapAnalysis gap_analysis(int R);

}  // namespace ratnerlab::quadforms
