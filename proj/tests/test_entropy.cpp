#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ratnerlab/errors.hpp"
#include "ratnerlab/group_algebra.hpp"
#include "ratnerlab/lie_algebra.hpp"
#include "ratnerlab/entropy.hpp"
#include "ratnerlab/rng.hpp"

using namespace ratnerlab;
using namespace ratnerlab::entropy;

namespace {

const double kLn2 = std::numbers::ln2;

double direct_entropy(const Eigen::MatrixXd& P) {
  double h = 0;
  for (Eigen::Index i = 0; i < P.size(); ++i)
    if (P(i) > 0) h -= P(i) * std::log(P(i));
  return h;
}

Eigen::MatrixXd random_table(Rng& rng, int r, int c) {
  Eigen::MatrixXd P(r, c);
  for (Eigen::Index i = 0; i < P.size(); ++i) P(i) = rng.uniform() < 0.2 ? 0.0 : rng.uniform();
  P(0, 0) += 0.1;
  return P / P.sum();
}

}  // namespace

TEST_CASE("entropy of probability vectors") {
  CHECK(entropy::entropy({1.0}) == 0.0);
  CHECK(entropy::entropy({0.5, 0.5}) == doctest::Approx(kLn2));
  CHECK(entropy::entropy({0.5, 0.25, 0.25}) == doctest::Approx(1.5 * kLn2));
  CHECK(entropy::entropy({0.5, 0.0, 0.5}) == doctest::Approx(kLn2));
  CHECK_THROWS_AS(entropy::entropy({-0.1, 1.1}), Error);
  CHECK_THROWS_AS(entropy::entropy({0.5, 0.4}), Error);
}

TEST_CASE("joins") {
  const std::vector<double> quarter(4, 0.25);
  const FinitePartition left(quarter, {0, 0, 1, 1}), parity(quarter, {0, 1, 0, 1});
  const auto j = join(left, parity);
  CHECK(j.cell_count() == 4);
  CHECK(j.entropy() == doctest::Approx(2 * kLn2));
  const auto fine = FinitePartition::discrete(quarter);
  CHECK(join(left, fine).cell_count() == 4);
  CHECK(join(left, FinitePartition::trivial(quarter)).entropy() == doctest::Approx(left.entropy()));
  CHECK(join(left, left).cell_count() == 2);
  CHECK(FinitePartition(quarter, {5, 5, 9, 9}).cell_count() == 2);
}

TEST_CASE("conditional entropy") {
  const std::vector<double> quarter(4, 0.25);
  const FinitePartition left(quarter, {0, 0, 1, 1}), parity(quarter, {0, 1, 0, 1});
  CHECK(conditional_entropy(parity, left) == doctest::Approx(parity.entropy()));
  CHECK(conditional_entropy(left, FinitePartition::discrete(quarter)) == doctest::Approx(0.0));

  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::MatrixXd P = random_table(rng, 2 + trial % 3, 3);
    const auto [A, B] = FinitePartition::from_joint_table(P);
    // Chain rule, with H(A v B) read directly from the table.
    CHECK(conditional_entropy(B, A) == doctest::Approx(direct_entropy(P) - A.entropy()).epsilon(1e-12));
    CHECK(join(A, B).entropy() == doctest::Approx(direct_entropy(P)).epsilon(1e-12));
    CHECK(conditional_entropy(B, A) <= B.entropy() + 1e-12);
  }
}

TEST_CASE("iterated information of model systems") {
  const auto bern = SymbolicSystem::bernoulli(0.5);
  CHECK(iterated_information(bern, 7) == doctest::Approx(7 * kLn2));
  const double p = 0.3, hp = -p * std::log(p) - (1 - p) * std::log(1 - p);
  CHECK(iterated_information(SymbolicSystem::bernoulli(p), 12) == doctest::Approx(12 * hp));
  CHECK(iterated_information(SymbolicSystem::baker(), 9) == doctest::Approx(9 * kLn2));

  const auto rot = SymbolicSystem::rotation(std::sqrt(3.0) / 100);
  CHECK(iterated_information(rot, 10) <= std::log(20.0) + 1e-12);
  for (const auto& sys : {bern, rot, SymbolicSystem::baker()})
    CHECK(iterated_information(sys, 1) == doctest::Approx(kLn2));

  double total = 0.0;
  for (const auto& c : iterated_join_cells(rot, 25)) total += c.weight * c.count;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(iterated_information(bern, 61), Error);
  CHECK_THROWS_AS(iterated_information(SymbolicSystem::rotation(std::sqrt(2.0)), 20000), Error);
}

TEST_CASE("entropy rates") {
  const auto r = entropy_rate(SymbolicSystem::bernoulli(0.5), 20);
  for (double x : r.rate) CHECK(x == doctest::Approx(kLn2).epsilon(1e-12));
  CHECK(r.subadditive());

  const auto rot = entropy_rate(SymbolicSystem::rotation(std::sqrt(3.0) / 100), 200);
  CHECK(rot.subadditive());
  for (std::size_t k = 1; k <= rot.Ek.size(); ++k) CHECK(rot.Ek[k - 1] <= std::log(2.0 * k) + 1e-12);
  CHECK(rot.terminal == rot.rate.back());

  // Time reversal leaves the exact values unchanged.
  for (const auto& sys : {SymbolicSystem::rotation(0.1234), SymbolicSystem::baker(), SymbolicSystem::bernoulli(0.2)}) {
    const auto fwd = entropy_rate(sys, 15), bwd = entropy_rate(sys.inverted(), 15);
    for (std::size_t k = 0; k < fwd.Ek.size(); ++k) CHECK(bwd.Ek[k] == doctest::Approx(fwd.Ek[k]).epsilon(1e-10));
  }
}

TEST_CASE("empirical itineraries approach the exact values") {
  for (const auto& sys : {SymbolicSystem::bernoulli(0.3), SymbolicSystem::baker(), SymbolicSystem::baker().inverted(),
                          SymbolicSystem::rotation(std::sqrt(3.0) / 100)}) {
    const double exact = iterated_information(sys, 5);
    const double est = empirical_iterated_information(sys, 5, 200000, 8);
    CHECK(std::abs(est - exact) < 0.01);
  }
}

TEST_CASE("stretch and translation entropy") {
  CHECK(stretch_entropy({{1.0, 2}, {1.0, 1}}) == 0.0);
  CHECK(stretch_entropy({{2.0, 1}, {0.5, 1}}) == doctest::Approx(kLn2));
  CHECK(stretch_entropy({{std::exp(2.0), 1}, {std::exp(-2.0), 1}, {1.0, 1}}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(stretch_entropy({{-1.0, 1}}), Error);

  const auto sl2 = group::LieAlgebra::sl2();
  for (double s : {0.1, 1.0, 3.0, -2.0})
    CHECK(translation_entropy(group::a_matrix(s), sl2) == doctest::Approx(2 * std::abs(s)).epsilon(1e-12));
  CHECK(translation_entropy(group::u_matrix(5), sl2) == doctest::Approx(0.0));
  CHECK(translation_entropy(Eigen::Matrix2d::Identity(), sl2) == 0.0);
}
