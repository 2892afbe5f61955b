#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "ratnerlab/errors.hpp"
#include "ratnerlab/quadforms.hpp"

using namespace ratnerlab;
using namespace ratnerlab::quadforms;

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::numbers::sqrt3;

QuadraticForm example_form() { return QuadraticForm::from_upper_triangle({1, -kSqrt2 / 2, 0, 0, 0, kSqrt3}); }

std::int64_t brute_count(const QuadraticForm& Q, double a, double b, int N) {
  std::int64_t c = 0;
  if (Q.dim() == 2) {
    for (int x = -N; x <= N; ++x)
      for (int y = -N; y <= N; ++y) {
        if (x * x + y * y > N * N) continue;
        const double q = Q(Eigen::Vector2d(x, y));
        c += q > a && q < b;
      }
    return c;
  }
  for (int x = -N; x <= N; ++x)
    for (int y = -N; y <= N; ++y)
      for (int z = -N; z <= N; ++z) {
        if (x * x + y * y + z * z > N * N) continue;
        const double q = Q(Eigen::Vector3d(x, y, z));
        c += q > a && q < b;
      }
  return c;
}

}  // namespace

TEST_CASE("evaluation") {
  const auto Q = example_form();
  CHECK(Q(IntVector{1, 1, 1}) == doctest::Approx(1 - kSqrt2 + kSqrt3));
  CHECK(Q(IntVector{0, 0, 0}) == 0.0);
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const IntVector v{static_cast<std::int64_t>(rng.uniform(-50, 50)), static_cast<std::int64_t>(rng.uniform(-50, 50)),
                      static_cast<std::int64_t>(rng.uniform(-50, 50))};
    const Eigen::Vector3d w(static_cast<double>(v[0]), static_cast<double>(v[1]), static_cast<double>(v[2]));
    CHECK(Q(v) == doctest::Approx(w[0] * w[0] - kSqrt2 * w[0] * w[1] + kSqrt3 * w[2] * w[2]).epsilon(1e-12));
    CHECK(Q.bilinear(w, w) == doctest::Approx(Q(w)));
  }
  CHECK_THROWS_AS(QuadraticForm::from_upper_triangle({1, 2}), Error);
  CHECK_THROWS_AS(Q(IntVector{1, 2}), Error);
}

TEST_CASE("signatures") {
  auto sig = [](std::vector<double> upper) { return QuadraticForm::from_upper_triangle(upper).signature(); };
  const auto s21 = sig({1, 0, 0, 1, 0, -1});
  CHECK((s21.p == 2 && s21.q == 1 && s21.z == 0));
  const auto s11 = sig({1, -1.5, 1});
  CHECK((s11.p == 1 && s11.q == 1 && s11.indefinite()));
  const auto deg = sig({1, -1, 1});
  CHECK((deg.p == 1 && deg.q == 0 && deg.z == 1));
  CHECK_FALSE(deg.nondegenerate());

  // Sylvester: congruence preserves the signature.
  Rng rng(42);
  const Eigen::MatrixXd B = example_form().matrix();
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd P = oracle::random_sl(rng, 3, 30.0);
    const auto s = signature_of(P * B * P.transpose());
    CHECK((s.p == 2 && s.q == 1 && s.z == 0));
  }
}

TEST_CASE("rational multiples") {
  const auto r = is_rational_multiple(QuadraticForm::from_upper_triangle({2, -3, 0}), 100, 1e-9);
  CHECK(r.found);
  CHECK(r.k == doctest::Approx(0.5));
  const auto zero = is_rational_multiple(QuadraticForm(Eigen::MatrixXd::Zero(2, 2)), 10, 1e-9);
  CHECK(zero.found);
  CHECK(zero.k == 1.0);
  CHECK_FALSE(is_rational_multiple(example_form(), 10000, 1e-8).found);
  const auto scaled = is_rational_multiple(QuadraticForm::from_upper_triangle({kSqrt2, 0, 3 * kSqrt2}), 100, 1e-9);
  CHECK(scaled.found);
  CHECK(scaled.k * kSqrt2 == doctest::Approx(1.0));
}

TEST_CASE("orthogonal group membership") {
  const auto Q11 = QuadraticForm::from_upper_triangle({1, 0, -1});
  CHECK(so_q_member(Q11, Eigen::Matrix2d::Identity(), 1e-12));
  const double s = 0.8;
  CHECK(so_q_member(Q11, (Eigen::Matrix2d() << std::cosh(s), std::sinh(s), std::sinh(s), std::cosh(s)).finished(),
                    1e-12));
  CHECK_FALSE(so_q_member(Q11, (Eigen::Matrix2d() << std::cos(s), -std::sin(s), std::sin(s), std::cos(s)).finished(),
                          1e-12));
  CHECK_THROWS_AS(so_q_member(Q11, 2.0 * Eigen::Matrix2d::Identity(), 1e-12), Error);
}

TEST_CASE("oppenheim search") {
  const auto Q = example_form();
  const auto first = oppenheim_search(Q, Q(IntVector{1, 1, 1}), 1e-9, 3);
  REQUIRE(first);
  CHECK(first->v == IntVector{1, 1, 1});

  const auto half = oppenheim_search(Q, 0.5, 0.01, 200);
  REQUIRE(half);
  CHECK(std::abs(Q(half->v) - 0.5) < 0.01);
  CHECK(half->value == Q(half->v));

  const auto definite = QuadraticForm::from_upper_triangle({1, 0, 1});
  CHECK_FALSE(oppenheim_search(definite, -1.0, 0.5, 50));
}

TEST_CASE("lattice counts") {
  const auto Q11 = QuadraticForm::from_upper_triangle({1, 0, -1});
  CHECK(count_values(Q11, -0.5, 0.5, 10) == 29);
  CHECK(count_values(QuadraticForm::from_upper_triangle({1, 0, 1}), 2.5, 3.5, 10) == 0);
  const auto Q = example_form();
  for (int N : {3, 7, 12}) CHECK(count_values(Q, -1.0, 2.0, N) == brute_count(Q, -1.0, 2.0, N));
  CHECK(count_values(Q11, -3.0, 5.0, 15) == brute_count(Q11, -3.0, 5.0, 15));
  // 0 is outside the window, so v and -v pair up.
  CHECK(count_values(Q, 0.1, 4.0, 20) % 2 == 0);
  CHECK_THROWS_AS(count_values(Q, 0, 1, 1000), Error);
}

TEST_CASE("volume estimates") {
  const auto sphere = QuadraticForm::from_upper_triangle({1, 0, 0, 1, 0, 1});
  const auto v = estimate_volume(sphere, -1.0, 1.0, 2.0, 200000, 5);
  CHECK(std::abs(v.volume - 4.0 * std::numbers::pi / 3.0) < 4 * v.standard_error + 1e-12);
  const auto w = estimate_volume(sphere, -1.0, 1.0, 2.0, 200000, 5);
  CHECK(w.volume == v.volume);
}

TEST_CASE("counting table preconditions") {
  const auto rational = QuadraticForm::from_upper_triangle({1, 0, 0, 0, 1, 0, 0, 1, 0, -2});
  CHECK_THROWS_AS(counting_ratio_table(rational, -1, 1, {5}, 1000, 1), Error);
  CHECK_THROWS_AS(counting_ratio_table(example_form(), -1, 1, {5}, 1000, 1), Error);
  const auto Q = QuadraticForm::from_upper_triangle({1, 0, 0, 0, 1, 0, 0, 1, 0, -kSqrt2});
  const auto t = counting_ratio_table(Q, 0.5, std::nextafter(0.5, 1.0), {5}, 1000, 1);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].count == 0);
  CHECK_FALSE(t.rows[0].ratio_defined());
  CHECK(t.expected_exponent == 2);
}

TEST_CASE("counterexample gap") {
  const auto g1 = gap_analysis(1);
  const double c = 3 + 2 * kSqrt2;
  CHECK(g1.min_abs == doctest::Approx(std::min({1.0, c, std::abs(1 - c)})));
  const auto g = gap_analysis(300);
  CHECK(g.min_abs == doctest::Approx(1.0));
  CHECK(g.running.size() == 300);
  for (std::size_t i = 1; i < g.running.size(); ++i) CHECK(g.running[i].min_abs <= g.running[i - 1].min_abs);
  CHECK_THROWS_AS(gap_analysis(0), Error);
}
