#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ratnerlab/hyperbolic.hpp"

namespace ratnerlab::flows {

using hyperbolic::CosetRep;
using hyperbolic::Mat2;

enum class FlowKind { Geodesic, Horocycle };
std::string_view to_string(FlowKind kind);

// a^t for the geodesic flow, u^t for the horocycle flow.
Mat2 flow_matrix(FlowKind kind, double t);

struct OrbitSample {
  FlowKind kind;
  std::vector<double> times;
  std::vector<CosetRep> reps;
};

// Sample times 0, dt, 2 dt, ... up to T; T itself is always the last time.
// `breaks` are extra times in (0, T) inserted into the grid.
std::vector<double> time_grid(double T, double dt, const std::vector<double>& breaks = {});

// Walks the orbit Gamma g0 x^t over `times` (increasing, starting at 0):
// each step multiplies the current representative on the right by the exact
// flow matrix of the time increment and re-reduces it.
void walk_orbit(FlowKind kind, const Mat2& g0, const std::vector<double>& times,
                const std::function<void(double, const CosetRep&)>& visit);

OrbitSample homogeneous_orbit(FlowKind kind, const Mat2& g0, double T, double dt);
inline OrbitSample geodesic_orbit(const Mat2& g0, double T, double dt) {
  return homogeneous_orbit(FlowKind::Geodesic, g0, T, dt);
}
inline OrbitSample horocycle_orbit(const Mat2& g0, double T, double dt) {
  return homogeneous_orbit(FlowKind::Horocycle, g0, T, dt);
}

// Test function on the fundamental domain in (x, y) coordinates, constant
// (= tail_value) for y >= support_top.
struct TestFunction {
  std::string name;
  std::function<double(double, double)> f;
  double tail_value = 0.0;
  double support_top = 4.0;

  double operator()(const hyperbolic::HPoint& z) const { return f(z.x(), z.y()); }
};

TestFunction constant_function(double c);
// Indicator of {y <= h}, smoothed by a linear ramp on [h - w, h + w].
TestFunction smoothed_height_indicator(double h, double w = 0.05);

// Integral of f over F against the normalized hyperbolic measure.
double space_average(const TestFunction& f);

// Trapezoidal average over the sampled times; the value itself for one sample.
double time_average(const OrbitSample& orbit, const TestFunction& f);

// Running trapezoidal integrals of several functions along a sampled path.
class TrapezoidAverager {
 public:
  explicit TrapezoidAverager(std::size_t count) : integral_(count, 0.0), last_(count, 0.0) {}
  void add(double t, const std::vector<double>& values);
  double average(std::size_t i) const;
  double elapsed() const { return started_ ? t_last_ - t_first_ : 0.0; }

 private:
  std::vector<double> integral_;
  std::vector<double> last_;
  double t_first_ = 0.0;
  double t_last_ = 0.0;
  bool started_ = false;
};

struct EquidistributionRow {
  double T;
  std::string function;
  double time_avg;
  double space_avg;
  double deviation;
  double max_deviation;  // over all functions at this T
};

// One orbit run up to max(T_list); each T in the list is a sample time.
std::vector<EquidistributionRow> equidistribution_report(FlowKind kind, const Mat2& g0,
                                                         const std::vector<TestFunction>& functions,
                                                         const std::vector<double>& T_list,
                                                         double dt);

struct PeriodicGeodesic {
  Mat2 g0;           // g0^{-1} gamma g0 = a^{period / 2}
  double period;     // 2 log lambda, the hyperbolic length of the closed geodesic
  double flow_time;  // log lambda, the smallest T > 0 with Gamma g0 a^T = Gamma g0
  double lambda;
};

// Throws not-hyperbolic for trace <= 2.
PeriodicGeodesic periodic_geodesic_basepoint(const hyperbolic::IntMatrix2& gamma);

// Fraction of sampled times with Im(point) > h.
double nondivergence_fraction(const OrbitSample& orbit, double h);

// --- tori ----------------------------------------------------------------------

struct TorusState {
  std::vector<double> x;  // in [0, 1)^n
  std::vector<double> v;

  TorusState(std::vector<double> x, std::vector<double> v);
  std::size_t dim() const { return x.size(); }
};

// x -> x + t v mod 1.
TorusState torus_step(const TorusState& s, double t);

struct TorusClosure {
  int dimension;                                // n - rank of the relations
  std::vector<std::vector<std::int64_t>> relations;  // independent primitive m with m.v ~ 0
  bool heuristic = true;
};

// Exhaustive search over 0 < |m|_inf <= H for |m . v| < tol. Primitive hits are
// sign-normalized and taken greedily in order of Euclidean norm (then
// lexicographically) while they increase the rank.
TorusClosure torus_orbit_closure(const std::vector<double>& v, int H, double tol = 1e-9);

// Trapezoidal time average of f along x + t v for t in [0, T], step dt.
double torus_time_average(const TorusState& s, const std::function<double(const std::vector<double>&)>& f,
                          double T, double dt);

struct OccupancyReport {
  int boxes_per_side;
  std::size_t core_boxes;         // boxes well inside the reported subtorus
  std::size_t core_visited;
  std::size_t complement_boxes;   // boxes not meeting the reported subtorus
  std::size_t complement_visited;
  double subtorus_occupancy() const;
  double complement_occupancy() const;
};

// Box-counting check of an orbit against the subtorus
// {x : m . (x - x0) in Z for every reported relation m}.
OccupancyReport torus_occupancy(const TorusState& s, const TorusClosure& closure, int boxes_per_side,
                                double T, double dt);

}  // namespace ratnerlab::flows
