#include "ratnerlab/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "quadrature.hpp"
#include "ratnerlab/errors.hpp"
#include "ratnerlab/rng.hpp"
#include "ratnerlab/tolerances.hpp"

namespace ratnerlab::hyperbolic {

HPoint::HPoint(double x, double y) : x_(x), y_(y) {
  if (!(y > tol::kMinImag) || !std::isfinite(x) || !std::isfinite(y)) {
    std::ostringstream os;
    os << "point " << x << " + " << y << "i is not in the upper half-plane";
    fail(ErrorKind::NumericUnderflow, os.str());
  }
}

Mat2 IntMatrix2::to_real() const {
  return (Mat2() << static_cast<double>(a), static_cast<double>(b), static_cast<double>(c),
          static_cast<double>(d))
      .finished();
}

namespace {

void require_sl2(const Mat2& g, std::string_view what) {
  const double det = g.determinant();
  if (std::abs(det - 1.0) > tol::kDeterminant) {
    std::ostringstream os;
    os << what << ": determinant " << det << " is not 1";
    fail(ErrorKind::InvalidInput, os.str());
  }
}

HPoint mobius(double a, double b, double c, double d, const HPoint& z) {
  const std::complex<double> w = (a * z.z() + b) / (c * z.z() + d);
  return HPoint::from_complex(w);
}

}  // namespace

HPoint mobius_act(const Mat2& g, const HPoint& z) {
  require_sl2(g, "mobius_act");
  return mobius(g(0, 0), g(1, 0), g(0, 1), g(1, 1), z);
}

HPoint mobius_standard(const Mat2& g, const HPoint& z) {
  require_sl2(g, "mobius_standard");
  return mobius(g(0, 0), g(0, 1), g(1, 0), g(1, 1), z);
}

HPoint mobius_standard(const IntMatrix2& g, const HPoint& z) {
  require(g.det() == 1, ErrorKind::InvalidInput, "mobius_standard: integer matrix must have det 1");
  return mobius(static_cast<double>(g.a), static_cast<double>(g.b), static_cast<double>(g.c),
                static_cast<double>(g.d), z);
}

HPoint zeta(const Mat2& g) {
  require_sl2(g, "zeta");
  const std::complex<double> first(g(0, 0), g(0, 1));
  const std::complex<double> second(g(1, 0), g(1, 1));
  require(std::abs(first) > 0.0, ErrorKind::BoundaryDegenerate, "zeta: first row is zero");
  return HPoint::from_complex(second / first);
}

double distance(const HPoint& z, const HPoint& w) {
  const double num = std::norm(z.z() - w.z());
  return std::acosh(1.0 + num / (2.0 * z.y() * w.y()));
}

bool in_fundamental_domain(const HPoint& z, double tol) {
  return std::abs(z.x()) <= 0.5 + tol && std::norm(z.z()) >= 1.0 - tol;
}

ReducedPoint reduce_to_f(const HPoint& z0) {
  double x = z0.x(), y = z0.y();
  IntMatrix2 gamma;
  for (long step = 0; step < tol::kReductionCap; ++step) {
    const double n = std::round(x);
    if (n != 0.0 && std::abs(x) > 0.5) {
      x -= n;
      const auto k = static_cast<std::int64_t>(n);
      gamma = IntMatrix2{1, -k, 0, 1} * gamma;
    }
    const double r2 = x * x + y * y;
    if (r2 < 1.0 - 1e-15) {
      x = -x / r2;
      y = y / r2;
      gamma = IntMatrix2{0, -1, 1, 0} * gamma;
      continue;
    }
    return {HPoint(x, y), gamma};
  }
  fail(ErrorKind::NonConvergence, "reduce_to_f: iteration cap exceeded");
}

namespace {

// det-1 matrices with entries in {-1, 0, 1}; they realize every identification
// of boundary points of the fundamental domain.
const std::vector<IntMatrix2>& small_moves() {
  static const std::vector<IntMatrix2> moves = [] {
    std::vector<IntMatrix2> out;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int c = -1; c <= 1; ++c)
          for (int d = -1; d <= 1; ++d)
            if (a * d - b * c == 1) out.push_back({a, b, c, d});
    return out;
  }();
  return moves;
}

}  // namespace

CosetRep reduce_coset(const Mat2& g) {
  const HPoint z = zeta(g);
  const ReducedPoint red = reduce_to_f(z);

  // Candidates +-delta * gamma keeping the point in the closed domain; the
  // representative with the lexicographically largest entries wins.
  IntMatrix2 best = red.gamma.swapped();
  auto key = [&](const IntMatrix2& gamma) {
    const Mat2 r = gamma.to_real() * g;
    return std::array<double, 4>{r(0, 0), r(0, 1), r(1, 0), r(1, 1)};
  };
  if (key(-best) > key(best)) best = -best;
  const bool interior = std::abs(red.point.x()) < 0.5 - 1e-9 && std::norm(red.point.z()) > 1.0 + 1e-9;
  if (!interior) {
    auto best_key = key(best);
    for (const auto& delta : small_moves()) {
      const HPoint moved = mobius_standard(delta, red.point);
      if (!in_fundamental_domain(moved, tol::kDomainBoundary)) continue;
      for (const IntMatrix2& cand : {(delta * red.gamma).swapped(), -(delta * red.gamma).swapped()}) {
        const auto k = key(cand);
        if (k > best_key) {
          best = cand;
          best_key = k;
        }
      }
    }
  }
  CosetRep out{g, best, best.to_real() * g, HPoint(0.0, 1.0)};
  out.point = zeta(out.rep);
  return out;
}

Mat2 element_from_point(const HPoint& z, double angle) {
  const double s = 1.0 / std::sqrt(z.y());
  const std::complex<double> first = std::polar(s, angle);
  const std::complex<double> second = z.z() * first;
  return (Mat2() << first.real(), first.imag(), second.real(), second.imag()).finished();
}

// --- area ---------------------------------------------------------------------

namespace {

// Integral of f(x, y) y^-2 over x in [x0, x1], y in [lo(x), hi].
template <class F, class Lo>
double integrate_region(const F& f, double x0, double x1, const Lo& lo, double hi, double tol) {
  const double width = std::max(x1 - x0, 1e-300);
  auto inner = [&](double x) {
    const double y0 = lo(x);
    if (!(hi > y0)) return 0.0;
    return detail::adaptive_simpson([&](double y) { return f(x, y) / (y * y); }, y0, hi, tol / width);
  };
  return detail::adaptive_simpson(inner, x0, x1, tol);
}

double rectangle_area(const Rectangle& r, const QuadratureOptions& opts) {
  if (!(r.y0 > 0.0)) fail(ErrorKind::DivergentRegion, "rectangle reaches the real axis");
  require(r.x1 >= r.x0 && r.y1 >= r.y0, ErrorKind::InvalidInput, "rectangle bounds are reversed");
  const double width = r.x1 - r.x0;
  if (width == 0.0 || r.y1 == r.y0) return 0.0;
  const double top = std::isinf(r.y1) ? std::max(opts.cusp_height, r.y0) : r.y1;
  auto one = [](double, double) { return 1.0; };
  double area = integrate_region(one, r.x0, r.x1, [&](double) { return r.y0; }, top, opts.tolerance);
  if (std::isinf(r.y1)) area += width / top;
  return area;
}

double domain_lower(double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); }

}  // namespace

double hyperbolic_area(const Region& region, const QuadratureOptions& opts) {
  if (const auto* u = std::get_if<RectangleUnion>(&region)) {
    double total = 0.0;
    for (const auto& r : u->parts) total += rectangle_area(r, opts);
    return total;
  }
  const auto& fd = std::get<FundamentalDomainRegion>(region);
  const double cut = std::min(fd.y_max, opts.cusp_height);
  auto one = [](double, double) { return 1.0; };
  double area = integrate_region(one, -0.5, 0.5, domain_lower, cut, opts.tolerance);
  if (fd.y_max > opts.cusp_height) {
    area += 1.0 / opts.cusp_height;
    if (std::isfinite(fd.y_max)) area -= 1.0 / fd.y_max;
  }
  return area;
}

double fundamental_domain_area() { return std::numbers::pi / 3.0; }

double space_average(const std::function<double(double, double)>& f, double tail_value,
                     const QuadratureOptions& opts) {
  const double y_cut = opts.cusp_height;
  const double body = integrate_region(f, -0.5, 0.5, domain_lower, y_cut, opts.tolerance);
  const double area = hyperbolic_area(FundamentalDomainRegion{}, opts);
  return (body + tail_value / y_cut) / area;
}

std::vector<HaarSample> haar_sample(std::size_t count, std::uint64_t seed) {
  std::vector<HaarSample> out;
  out.reserve(count);
  Rng rng(seed);
  const double y_min = std::sqrt(3.0) / 2.0;
  while (out.size() < count) {
    const double x = rng.uniform() - 0.5;
    const double y = y_min / rng.uniform_open();
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    if (x * x + y * y < 1.0) continue;
    const Mat2 g = element_from_point(HPoint(x, y), angle);
    out.push_back({reduce_coset(g), angle});
  }
  return out;
}

std::vector<std::array<double, 2>> fundamental_domain_polygon(double y_top, int arc_points) {
  const double corner = std::sqrt(3.0) / 2.0;
  std::vector<std::array<double, 2>> v;
  v.push_back({-0.5, y_top});
  v.push_back({-0.5, corner});
  for (int i = 1; i < arc_points; ++i) {
    const double theta = 2.0 * std::numbers::pi / 3.0 - (std::numbers::pi / 3.0) * i / arc_points;
    v.push_back({std::cos(theta), std::sin(theta)});
  }
  v.push_back({0.5, corner});
  v.push_back({0.5, y_top});
  v.push_back({-0.5, y_top});
  return v;
}

}  // namespace ratnerlab::hyperbolic
