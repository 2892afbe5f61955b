#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "ratnerlab/errors.hpp"
#include "ratnerlab/flows.hpp"
#include "ratnerlab/group_algebra.hpp"

using namespace ratnerlab;
using namespace ratnerlab::flows;

TEST_CASE("flow matrices form one-parameter groups") {
  for (auto kind : {FlowKind::Geodesic, FlowKind::Horocycle}) {
    CHECK((flow_matrix(kind, 0) - Mat2::Identity()).norm() == 0.0);
    CHECK((flow_matrix(kind, 0.3) * flow_matrix(kind, 1.2) - flow_matrix(kind, 1.5)).norm() < 1e-12);
  }
  CHECK((flow_matrix(FlowKind::Horocycle, 2) - group::u_matrix(2)).norm() == 0.0);
  CHECK((flow_matrix(FlowKind::Geodesic, 2) - group::a_matrix(2)).norm() == 0.0);
}

TEST_CASE("time grid") {
  const auto g = time_grid(1.0, 0.3);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  const auto b = time_grid(1.0, 0.5, {0.25});
  CHECK(b == std::vector<double>{0, 0.25, 0.5, 1.0});
  CHECK(time_grid(0.0, 0.1) == std::vector<double>{0.0});
}

TEST_CASE("orbits stay in the fundamental domain") {
  Rng rng(9);
  const Mat2 g0 = oracle::random_sl(rng, 2);
  for (auto kind : {FlowKind::Geodesic, FlowKind::Horocycle}) {
    const auto orbit = homogeneous_orbit(kind, g0, kind == FlowKind::Geodesic ? 5.0 : 50.0, 0.05);
    CHECK(orbit.times.size() == orbit.reps.size());
    for (const auto& r : orbit.reps) {
      CHECK(hyperbolic::in_fundamental_domain(r.point, 1e-9));
      CHECK(std::abs(r.rep.determinant() - 1.0) < 1e-12);
    }
    // The walk agrees with a direct reduction of g0 x^t.
    const auto direct = hyperbolic::reduce_coset(g0 * flow_matrix(kind, orbit.times.back()));
    CHECK(std::abs(direct.point.z() - orbit.reps.back().point.z()) < 1e-6);
  }
  const auto single = horocycle_orbit(g0, 0.0, 0.1);
  REQUIRE(single.reps.size() == 1);
  CHECK(std::abs(single.reps[0].point.z() - hyperbolic::reduce_coset(g0).point.z()) < 1e-14);
}

TEST_CASE("closed horocycle") {
  // zeta(a^-3 u^t) = e^6 (t + i): the orbit closes after time e^-6 at height e^6.
  const Mat2 g0 = group::a_matrix(-3);
  const double period = std::exp(-6.0);
  const auto orbit = horocycle_orbit(g0, period, period / 100);
  for (const auto& r : orbit.reps) CHECK(r.point.y() == doctest::Approx(std::exp(6.0)));
  CHECK(nondivergence_fraction(orbit, 10.0) == 1.0);
  CHECK(nondivergence_fraction(orbit, 0.5) == 1.0);
  CHECK(std::abs(orbit.reps.back().point.z() - orbit.reps.front().point.z()) < 1e-6);
}

TEST_CASE("periodic geodesic") {
  const auto pg = periodic_geodesic_basepoint({2, 1, 1, 1});
  const double lambda = (3 + std::sqrt(5.0)) / 2;
  CHECK(pg.lambda == doctest::Approx(lambda));
  CHECK(pg.period == doctest::Approx(2 * std::log(lambda)));
  CHECK(pg.flow_time == doctest::Approx(std::log(lambda)));
  const auto start = hyperbolic::reduce_coset(pg.g0);
  const auto end = hyperbolic::reduce_coset(pg.g0 * group::a_matrix(pg.flow_time));
  CHECK(std::abs(start.point.z() - end.point.z()) < 1e-9);
  CHECK_THROWS_AS(periodic_geodesic_basepoint({1, 1, 0, 1}), Error);
}

TEST_CASE("space and time averages") {
  CHECK(space_average(constant_function(3.0)) == doctest::Approx(3.0).epsilon(1e-10));
  for (double h : {2.0, 1.5}) {
    const auto f = smoothed_height_indicator(h);
    CHECK(std::abs(space_average(f) - oracle::ramp_indicator_average(h, 0.05)) < 1e-9);
  }
  const auto orbit = geodesic_orbit(Mat2::Identity(), 5.0, 0.1);
  CHECK(time_average(orbit, constant_function(2.0)) == doctest::Approx(2.0).epsilon(1e-14));

  TrapezoidAverager avg(1);
  avg.add(0.0, {0.0});
  avg.add(1.0, {1.0});
  avg.add(2.0, {1.0});
  CHECK(avg.average(0) == doctest::Approx(0.75));
  CHECK(avg.elapsed() == 2.0);

  const auto rows = equidistribution_report(FlowKind::Horocycle, Mat2::Identity(), {constant_function(1.0)},
                                            {1.0, 2.0}, 0.01);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) CHECK(r.deviation < 1e-9);
}

TEST_CASE("torus steps and closures") {
  const TorusState s({0.0, 0.0}, {1.0, 2.0});
  const auto t = torus_step(s, 1.0);
  CHECK(t.x[0] == doctest::Approx(0.0));
  CHECK(t.x[1] == doctest::Approx(0.0));
  const auto r = torus_step(TorusState({0.0, 0.0}, {std::sqrt(2.0), 1.0}), 1.0);
  CHECK(r.x[0] == doctest::Approx(std::sqrt(2.0) - 1));
  CHECK(torus_step(s, 0.0).x == s.x);

  const auto c3 = torus_orbit_closure({std::sqrt(2.0), 1.0, 0.0}, 50);
  CHECK(c3.dimension == 2);
  CHECK(c3.relations == std::vector<std::vector<std::int64_t>>{{0, 0, 1}});
  const auto c2 = torus_orbit_closure({1.0, 2.0}, 5);
  CHECK(c2.dimension == 1);
  CHECK(c2.relations == std::vector<std::vector<std::int64_t>>{{2, -1}});
  CHECK(torus_orbit_closure({0.0, 0.0}, 5).dimension == 0);
  CHECK(torus_orbit_closure({std::sqrt(2.0), std::sqrt(3.0)}, 20).dimension == 2);
}

TEST_CASE("torus averages and occupancy") {
  const double two_pi = 2 * std::numbers::pi;
  const auto weyl = torus_time_average(TorusState({0.0, 0.0}, {std::sqrt(2.0), 1.0}),
                                       [&](const std::vector<double>& x) { return std::cos(two_pi * x[0]); },
                                       1e4, 0.01);
  CHECK(std::abs(weyl) < 0.02);
  const auto closed = torus_time_average(
      TorusState({0.0, 0.0}, {1.0, 1.0}),
      [&](const std::vector<double>& x) { return std::cos(two_pi * (x[0] - x[1])); }, 100.0, 0.01);
  CHECK(closed == doctest::Approx(1.0).epsilon(1e-12));

  const TorusState s3({0.1, 0.2, 0.3}, {std::sqrt(2.0), 1.0, 0.0});
  const auto rep = torus_occupancy(s3, torus_orbit_closure(s3.v, 50), 10, 2000.0, 0.01);
  CHECK(rep.subtorus_occupancy() == 1.0);
  CHECK(rep.complement_occupancy() == 0.0);
}
