#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "ratnerlab/errors.hpp"
#include "ratnerlab/flows.hpp"

namespace ratnerlab::flows {

namespace {

double mod1(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

// Signed distance of r to the nearest integer.
double signed_frac(double r) { return r - std::round(r); }

}  // namespace

TorusState::TorusState(std::vector<double> x_in, std::vector<double> v_in)
    : x(std::move(x_in)), v(std::move(v_in)) {
  require(!x.empty() && x.size() == v.size(), ErrorKind::InvalidInput,
          "torus point and direction must have the same positive dimension");
  for (double& c : x) c = mod1(c);
}

TorusState torus_step(const TorusState& s, double t) {
  std::vector<double> x(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) x[i] = s.x[i] + t * s.v[i];
  return {std::move(x), s.v};
}

TorusClosure torus_orbit_closure(const std::vector<double>& v, int H, double tol) {
  require(H >= 1 && tol > 0.0, ErrorKind::InvalidInput, "closure search needs H >= 1 and tol > 0");
  require(!v.empty(), ErrorKind::InvalidInput, "empty direction");
  const std::size_t n = v.size();
  const double side = 2.0 * H + 1.0;
  if (std::pow(side, static_cast<double>(n)) > 2e8)
    fail(ErrorKind::BudgetExceeded, "relation search box too large");

  std::vector<std::vector<std::int64_t>> hits;
  std::vector<std::int64_t> m(n, -H);
  for (;;) {
    double dot = 0.0;
    std::int64_t g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += static_cast<double>(m[i]) * v[i];
      g = std::gcd(g, m[i]);
    }
    // Primitive, first nonzero entry positive.
    if (g == 1 && std::abs(dot) < tol) {
      const auto first = std::find_if(m.begin(), m.end(), [](std::int64_t e) { return e != 0; });
      if (*first > 0) hits.push_back(m);
    }
    std::size_t k = 0;
    while (k < n && m[k] == H) m[k++] = -H;
    if (k == n) break;
    ++m[k];
  }

  auto norm2 = [](const std::vector<std::int64_t>& a) {
    std::int64_t s = 0;
    for (auto e : a) s += e * e;
    return s;
  };
  std::sort(hits.begin(), hits.end(), [&](const auto& a, const auto& b) {
    const auto na = norm2(a), nb = norm2(b);
    return na != nb ? na < nb : a < b;
  });

  TorusClosure out{static_cast<int>(n), {}, true};
  Eigen::MatrixXd basis(0, static_cast<Eigen::Index>(n));
  for (const auto& h : hits) {
    if (out.relations.size() == n) break;
    Eigen::MatrixXd trial(basis.rows() + 1, basis.cols());
    trial.topRows(basis.rows()) = basis;
    for (std::size_t i = 0; i < n; ++i) trial(basis.rows(), static_cast<Eigen::Index>(i)) = static_cast<double>(h[i]);
    if (Eigen::FullPivLU<Eigen::MatrixXd>(trial).rank() > basis.rows()) {
      basis = trial;
      out.relations.push_back(h);
    }
  }
  out.dimension = static_cast<int>(n - out.relations.size());
  return out;
}

double torus_time_average(const TorusState& s, const std::function<double(const std::vector<double>&)>& f,
                          double T, double dt) {
  const std::vector<double> times = time_grid(T, dt);
  TrapezoidAverager avg(1);
  std::vector<double> x(s.dim());
  for (double t : times) {
    for (std::size_t i = 0; i < s.dim(); ++i) x[i] = mod1(s.x[i] + t * s.v[i]);
    avg.add(t, {f(x)});
  }
  return avg.average(0);
}

double OccupancyReport::subtorus_occupancy() const {
  return core_boxes == 0 ? 0.0 : static_cast<double>(core_visited) / static_cast<double>(core_boxes);
}

double OccupancyReport::complement_occupancy() const {
  return complement_boxes == 0
             ? 0.0
             : static_cast<double>(complement_visited) / static_cast<double>(complement_boxes);
}

OccupancyReport torus_occupancy(const TorusState& s, const TorusClosure& closure, int boxes_per_side,
                                double T, double dt) {
  require(boxes_per_side >= 2, ErrorKind::InvalidInput, "need at least two boxes per side");
  const std::size_t n = s.dim();
  const std::size_t M = static_cast<std::size_t>(boxes_per_side);
  const double total_d = std::pow(static_cast<double>(M), static_cast<double>(n));
  if (total_d > 5e7) fail(ErrorKind::BudgetExceeded, "too many occupancy boxes");
  const auto total = static_cast<std::size_t>(total_d);
  const double h = 1.0 / static_cast<double>(M);

  // Box b has centre (k_1, ..., k_n) / M; points are assigned to the nearest centre.
  std::vector<char> visited(total, 0);
  std::vector<double> x(n);
  for (double t : time_grid(T, dt)) {
    std::size_t idx = 0;
    for (std::size_t i = n; i-- > 0;) {
      const double c = mod1(s.x[i] + t * s.v[i]);
      const auto k = static_cast<std::size_t>(std::floor(c * static_cast<double>(M) + 0.5)) % M;
      idx = idx * M + k;
    }
    visited[idx] = 1;
  }

  OccupancyReport rep{boxes_per_side, 0, 0, 0, 0};
  std::vector<std::size_t> k(n, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = 0; i < n; ++i) {
      k[i] = rest % M;
      rest /= M;
    }
    // Slack of each relation at the box centre, against the half-width of
    // m . (box - centre), which is |m|_1 h / 2.
    double worst = 0.0;
    for (const auto& m : closure.relations) {
      double dot = 0.0, l1 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dot += static_cast<double>(m[i]) * (static_cast<double>(k[i]) * h - s.x[i]);
        l1 += std::abs(static_cast<double>(m[i]));
      }
      worst = std::max(worst, std::abs(signed_frac(dot)) / (0.5 * l1 * h));
    }
    if (worst <= 0.9) {
      ++rep.core_boxes;
      rep.core_visited += visited[idx];
    } else if (worst > 1.0 + 1e-9) {
      ++rep.complement_boxes;
      rep.complement_visited += visited[idx];
    }
  }
  return rep;
}

}  // namespace ratnerlab::flows
