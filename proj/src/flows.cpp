#include "ratnerlab/flows.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ratnerlab/errors.hpp"
#include "ratnerlab/group_algebra.hpp"
#include "ratnerlab/tolerances.hpp"

namespace ratnerlab::flows {

using hyperbolic::HPoint;
using hyperbolic::IntMatrix2;

std::string_view to_string(FlowKind kind) {
  return kind == FlowKind::Geodesic ? "geodesic" : "horocycle";
}

Mat2 flow_matrix(FlowKind kind, double t) {
  return kind == FlowKind::Geodesic ? group::a_matrix(t) : group::u_matrix(t);
}

std::vector<double> time_grid(double T, double dt, const std::vector<double>& breaks) {
  require(dt > 0.0 && std::isfinite(dt), ErrorKind::InvalidInput, "dt must be positive");
  require(T >= 0.0 && std::isfinite(T), ErrorKind::InvalidInput, "T must be non-negative");
  std::vector<double> extra;
  for (double b : breaks)
    if (b > 0.0 && b < T) extra.push_back(b);
  std::sort(extra.begin(), extra.end());

  std::vector<double> times{0.0};
  const double slack = 1e-9 * dt;
  auto push = [&](double t) {
    if (t > times.back() + slack) times.push_back(t);
  };
  std::size_t next_break = 0;
  for (std::int64_t i = 1;; ++i) {
    const double t = static_cast<double>(i) * dt;
    while (next_break < extra.size() && extra[next_break] < t - slack) push(extra[next_break++]);
    if (t >= T - slack) break;
    push(t);
  }
  while (next_break < extra.size()) push(extra[next_break++]);
  if (T > 0.0) {
    if (times.back() > T - slack && times.size() > 1) times.back() = T;
    else push(T);
  }
  return times;
}

namespace {

Mat2 renormalized(const Mat2& g) {
  const double det = g.determinant();
  if (!(det > 0.0)) fail(ErrorKind::NumericalFailure, "orbit representative lost its determinant");
  return g / std::sqrt(det);
}

}  // namespace

void walk_orbit(FlowKind kind, const Mat2& g0, const std::vector<double>& times,
                const std::function<void(double, const CosetRep&)>& visit) {
  require(!times.empty() && times.front() == 0.0, ErrorKind::InvalidInput,
          "orbit times must start at 0");
  group::require_unit_determinant(g0, tol::kDeterminant, "orbit start");
  CosetRep cur = hyperbolic::reduce_coset(g0);
  visit(0.0, cur);
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double step = times[i] - times[i - 1];
    cur = hyperbolic::reduce_coset(renormalized(cur.rep * flow_matrix(kind, step)));
    visit(times[i], cur);
  }
}

OrbitSample homogeneous_orbit(FlowKind kind, const Mat2& g0, double T, double dt) {
  OrbitSample out{kind, time_grid(T, dt), {}};
  out.reps.reserve(out.times.size());
  walk_orbit(kind, g0, out.times, [&](double, const CosetRep& r) { out.reps.push_back(r); });
  return out;
}

TestFunction constant_function(double c) {
  std::ostringstream name;
  name << "const(" << c << ")";
  return {name.str(), [c](double, double) { return c; }, c, 1.0};
}

TestFunction smoothed_height_indicator(double h, double w) {
  require(h > 0.0 && w >= 0.0, ErrorKind::InvalidInput, "indicator needs h > 0, w >= 0");
  std::ostringstream name;
  name << "ind(y<=" << h << ")";
  auto f = [h, w](double, double y) {
    if (y <= h - w) return 1.0;
    if (y >= h + w) return 0.0;
    return (h + w - y) / (2.0 * w);
  };
  return {name.str(), f, 0.0, h + w};
}

double space_average(const TestFunction& f) {
  hyperbolic::QuadratureOptions opts;
  opts.cusp_height = std::max(opts.cusp_height, f.support_top + 1.0);
  opts.tolerance = 1e-10;
  return hyperbolic::space_average(f.f, f.tail_value, opts);
}

void TrapezoidAverager::add(double t, const std::vector<double>& values) {
  if (!started_) {
    started_ = true;
    t_first_ = t_last_ = t;
    last_ = values;
    return;
  }
  const double h = t - t_last_;
  for (std::size_t i = 0; i < values.size(); ++i) integral_[i] += 0.5 * h * (last_[i] + values[i]);
  last_ = values;
  t_last_ = t;
}

double TrapezoidAverager::average(std::size_t i) const {
  require(started_, ErrorKind::InvalidInput, "average of an empty orbit");
  const double span = t_last_ - t_first_;
  return span > 0.0 ? integral_[i] / span : last_[i];
}

double time_average(const OrbitSample& orbit, const TestFunction& f) {
  require(!orbit.times.empty(), ErrorKind::InvalidInput, "empty orbit");
  TrapezoidAverager avg(1);
  for (std::size_t i = 0; i < orbit.times.size(); ++i) avg.add(orbit.times[i], {f(orbit.reps[i].point)});
  return avg.average(0);
}

std::vector<EquidistributionRow> equidistribution_report(FlowKind kind, const Mat2& g0,
                                                         const std::vector<TestFunction>& functions,
                                                         const std::vector<double>& T_list,
                                                         double dt) {
  require(!T_list.empty(), ErrorKind::InvalidInput, "no horizons given");
  std::vector<double> horizons = T_list;
  std::sort(horizons.begin(), horizons.end());
  for (double T : horizons) require(T > 0.0, ErrorKind::InvalidInput, "horizons must be positive");

  std::vector<double> space(functions.size());
  for (std::size_t i = 0; i < functions.size(); ++i) space[i] = space_average(functions[i]);

  const std::vector<double> times = time_grid(horizons.back(), dt, horizons);
  TrapezoidAverager avg(functions.size());
  std::vector<double> values(functions.size());
  std::vector<EquidistributionRow> rows;
  std::size_t next = 0;
  walk_orbit(kind, g0, times, [&](double t, const CosetRep& r) {
    for (std::size_t i = 0; i < functions.size(); ++i) values[i] = functions[i](r.point);
    avg.add(t, values);
    while (next < horizons.size() && std::abs(t - horizons[next]) <= 1e-9 * dt) {
      const std::size_t first = rows.size();
      double worst = 0.0;
      for (std::size_t i = 0; i < functions.size(); ++i) {
        const double ta = avg.average(i);
        const double dev = std::abs(ta - space[i]);
        worst = std::max(worst, dev);
        rows.push_back({horizons[next], functions[i].name, ta, space[i], dev, 0.0});
      }
      for (std::size_t j = first; j < rows.size(); ++j) rows[j].max_deviation = worst;
      ++next;
    }
  });
  return rows;
}

PeriodicGeodesic periodic_geodesic_basepoint(const IntMatrix2& gamma) {
  require(gamma.det() == 1, ErrorKind::InvalidInput, "gamma must lie in SL(2,Z)");
  const double tr = static_cast<double>(gamma.a + gamma.d);
  if (!(tr > 2.0)) fail(ErrorKind::NotHyperbolic, "trace must exceed 2");
  const double lambda = 0.5 * (tr + std::sqrt(tr * tr - 4.0));
  const Mat2 g = gamma.to_real();

  // Eigenvector of g for eigenvalue mu: a nonzero column of adj(g - mu I).
  auto eigvec = [&](double mu) {
    const Mat2 m = g - mu * Mat2::Identity();
    Eigen::Vector2d c1(m(1, 1), -m(1, 0)), c2(-m(0, 1), m(0, 0));
    Eigen::Vector2d e = c1.norm() >= c2.norm() ? c1 : c2;
    return Eigen::Vector2d(e / e.norm());
  };
  Mat2 g0;
  g0.col(0) = eigvec(lambda);
  g0.col(1) = eigvec(1.0 / lambda);
  double det = g0.determinant();
  if (det < 0.0) {
    g0.col(1) = -g0.col(1);
    det = -det;
  }
  g0 /= std::sqrt(det);
  const double ell = std::log(lambda);
  return {g0, 2.0 * ell, ell, lambda};
}

double nondivergence_fraction(const OrbitSample& orbit, double h) {
  require(!orbit.reps.empty(), ErrorKind::InvalidInput, "empty orbit");
  std::size_t above = 0;
  for (const auto& r : orbit.reps)
    if (r.point.y() > h) ++above;
  return static_cast<double>(above) / static_cast<double>(orbit.reps.size());
}

}  // namespace ratnerlab::flows
