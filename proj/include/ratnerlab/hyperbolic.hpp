#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace ratnerlab::hyperbolic {

using Mat2 = Eigen::Matrix2d;

// Point x + iy of the upper half-plane.
class HPoint {
 public:
  // Throws numeric-underflow unless y > 1e-300.
  HPoint(double x, double y);
  static HPoint from_complex(std::complex<double> z) { return {z.real(), z.imag()}; }

  double x() const { return x_; }
  double y() const { return y_; }
  std::complex<double> z() const { return {x_, y_}; }

 private:
  double x_;
  double y_;
};

// Integer 2x2 matrix [[a, b], [c, d]].
struct IntMatrix2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  static IntMatrix2 identity() { return {}; }
  std::int64_t det() const { return a * d - b * c; }
  IntMatrix2 operator*(const IntMatrix2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  IntMatrix2 operator-() const { return {-a, -b, -c, -d}; }
  bool operator==(const IntMatrix2&) const = default;
  std::array<std::int64_t, 4> entries() const { return {a, b, c, d}; }
  Mat2 to_real() const;
  // [[d, c], [b, a]]: the involution of SL(2,Z) intertwining left
  // multiplication of g with the standard Moebius action on zeta(g).
  IntMatrix2 swapped() const { return {d, c, b, a}; }
};

// Action by isometries in the row convention: g z = (a z + c) / (b z + d).
// This is a right action: act(g, act(h, z)) = act(h g, z).
HPoint mobius_act(const Mat2& g, const HPoint& z);

// Standard left action (a z + b) / (c z + d), used for Gamma-reduction.
HPoint mobius_standard(const Mat2& g, const HPoint& z);
HPoint mobius_standard(const IntMatrix2& g, const HPoint& z);

// zeta(g) = C(g^T e2) / C(g^T e1) with C(x, y) = x + iy, i.e. the ratio of the
// second row to the first row of g read as complex numbers. For gamma in
// SL(2,Z): zeta(gamma g) = mobius_standard(gamma.swapped(), zeta(g)).
HPoint zeta(const Mat2& g);

// Hyperbolic distance: cosh d = 1 + |z - w|^2 / (2 Im z Im w).
double distance(const HPoint& z, const HPoint& w);

// Closed region |z| >= 1, |Re z| <= 1/2, boundary tolerance `tol`.
bool in_fundamental_domain(const HPoint& z, double tol = 1e-12);

struct ReducedPoint {
  HPoint point;
  IntMatrix2 gamma;  // point = mobius_standard(gamma, original)
};

// Gauss reduction: translate Re z into [-1/2, 1/2], invert when |z| < 1,
// repeat. Every inversion strictly increases Im z.
ReducedPoint reduce_to_f(const HPoint& z);

// Canonical representative of the coset Gamma g.
struct CosetRep {
  Mat2 g;            // input element
  IntMatrix2 gamma;  // left multiplier, det 1
  Mat2 rep;          // gamma * g
  HPoint point;      // zeta(gamma * g), inside the closed fundamental domain
};

// Reduces zeta(g) into the fundamental domain. Among the admissible +-gamma
// (several on the boundary of F) the one whose gamma * g has the
// lexicographically largest entries (row-major) is returned, so the result
// depends only on the coset.
CosetRep reduce_coset(const Mat2& g);

// Group element with zeta(g) = z whose first row has argument `angle`.
Mat2 element_from_point(const HPoint& z, double angle);

// --- area and averages --------------------------------------------------------

struct Rectangle {
  double x0, x1, y0, y1;  // y1 may be +infinity
};

struct RectangleUnion {
  std::vector<Rectangle> parts;  // assumed pairwise disjoint
};

// F intersected with {y <= y_max}; y_max = +infinity is the whole domain.
struct FundamentalDomainRegion {
  double y_max = std::numeric_limits<double>::infinity();
};

using Region = std::variant<RectangleUnion, FundamentalDomainRegion>;

struct QuadratureOptions {
  double tolerance = 1e-11;  // absolute, per adaptive integral
  double cusp_height = 4.0;  // y above which the closed-form tail is used
};

// Integral of y^-2 dx dy; a cusp tail {y >= Y} over width w contributes w / Y.
// Throws divergent-region for rectangles touching y <= 0.
double hyperbolic_area(const Region& region, const QuadratureOptions& opts = {});

double fundamental_domain_area();  // pi / 3

// Integral of f(x, y) y^-2 over F divided by area(F). f must be constant
// (equal to tail_value) above opts.cusp_height.
double space_average(const std::function<double(double, double)>& f, double tail_value,
                     const QuadratureOptions& opts = {});

struct HaarSample {
  CosetRep rep;
  double angle;
};

// Points of F with density y^-2 / area(F) by rejection sampling, paired with
// a uniform angle; deterministic for a fixed seed.
std::vector<HaarSample> haar_sample(std::size_t count, std::uint64_t seed);

// Boundary of F (truncated at height y_top) as a closed vertex list.
std::vector<std::array<double, 2>> fundamental_domain_polygon(double y_top, int arc_points = 64);

}  // namespace ratnerlab::hyperbolic
