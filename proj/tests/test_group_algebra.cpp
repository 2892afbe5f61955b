#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "oracles.hpp"
#include "ratnerlab/errors.hpp"
#include "ratnerlab/group_algebra.hpp"
#include "ratnerlab/lie_algebra.hpp"
#include "ratnerlab/tolerances.hpp"

using namespace ratnerlab;
using namespace ratnerlab::group;

namespace {

double rel_diff(const Matrix& a, const Matrix& b) { return max_norm(a - b) / std::max(1.0, max_norm(b)); }

Eigen::Matrix2d rotation(double th) {
  return (Eigen::Matrix2d() << std::cos(th), -std::sin(th), std::sin(th), std::cos(th)).finished();
}

void check_triple(const Matrix& g, const JordanTriple& j) {
  CHECK(rel_diff(j.unip * j.hyp * j.ell, g) < 1e-9);
  CHECK(rel_diff(j.unip * j.hyp, j.hyp * j.unip) < 1e-9);
  CHECK(rel_diff(j.unip * j.ell, j.ell * j.unip) < 1e-9);
  CHECK(rel_diff(j.hyp * j.ell, j.ell * j.hyp) < 1e-9);
  CHECK(is_unipotent(j.unip, 1e-8));
  CHECK(is_hyperbolic(j.hyp, 1e-8));
  CHECK(is_elliptic(j.ell, 1e-8));
}

Vector coords(const LieAlgebra& alg, std::initializer_list<std::pair<const char*, double>> terms) {
  Vector x = Vector::Zero(alg.dim());
  for (const auto& [name, c] : terms) {
    const auto& l = alg.labels();
    const auto it = std::find(l.begin(), l.end(), name);
    REQUIRE(it != l.end());
    x(it - l.begin()) += c;
  }
  return x;
}

// Brute-force S~: kernel of the projections of (ad u)^k x outside
// g_- + g_0 + U, stacked over random elements u of U.
Matrix s_tilde_oracle(const LieAlgebra& alg, const Vector& a, const Matrix& U, std::uint64_t seed) {
  const int n = alg.dim();
  const Matrix ada = alg.ad(a);
  Eigen::EigenSolver<Matrix> es(ada);
  Matrix keep(n, 0);
  for (int i = 0; i < n; ++i) {
    if (es.eigenvalues()(i).real() > 1e-8) continue;
    keep.conservativeResize(Eigen::NoChange, keep.cols() + 1);
    keep.col(keep.cols() - 1) = es.eigenvectors().col(i).real();
  }
  Matrix W(n, keep.cols() + U.cols());
  W << keep, U;
  Eigen::ColPivHouseholderQR<Matrix> qr(W);
  const Matrix Q = qr.householderQ() * Matrix::Identity(n, qr.rank());
  const Matrix P = Matrix::Identity(n, n) - Q * Q.transpose();

  Rng rng(seed);
  Matrix stack(0, n);
  for (int s = 0; s < 6; ++s) {
    Vector c(U.cols());
    for (int i = 0; i < c.size(); ++i) c(i) = rng.normal();
    const Matrix adu = alg.ad(U * c);
    Matrix power = Matrix::Identity(n, n);
    for (int k = 0; k <= n; ++k) {
      const Matrix block = P * power;
      stack.conservativeResize(stack.rows() + n, Eigen::NoChange);
      stack.bottomRows(n) = block;
      power = adu * power;
    }
  }
  Eigen::FullPivLU<Matrix> lu(stack);
  lu.setThreshold(1e-9);
  return lu.kernel();
}

}  // namespace

TEST_CASE("trace classification") {
  CHECK(classify_sl2(u_matrix(3)) == Sl2Class::Unipotent);
  CHECK(classify_sl2(a_matrix(1)) == Sl2Class::Hyperbolic);
  CHECK(classify_sl2(rotation(std::numbers::pi / 3)) == Sl2Class::Elliptic);
  CHECK(classify_sl2(Eigen::Matrix2d::Identity()) == Sl2Class::IdentityLike);
  CHECK(classify_sl2(-a_matrix(1)) == Sl2Class::NoneOfThese);
  CHECK_THROWS_AS(classify_sl2(2.0 * Eigen::Matrix2d::Identity()), Error);
}

TEST_CASE("jordan decomposition of simple matrices") {
  const Matrix I3 = Matrix::Identity(3, 3);
  auto id = real_jordan_decompose(I3);
  CHECK(max_norm(id.unip - I3) < 1e-12);
  CHECK(max_norm(id.hyp - I3) < 1e-12);
  CHECK(max_norm(id.ell - I3) < 1e-12);

  const Matrix u = u_matrix(2.5);
  auto ju = real_jordan_decompose(u);
  CHECK(max_norm(ju.unip - u) < 1e-10);
  CHECK(max_norm(ju.hyp - Matrix::Identity(2, 2)) < 1e-10);

  Matrix h(2, 2);
  h << 2, 1, 1, 1;
  auto jh = real_jordan_decompose(h);
  CHECK(max_norm(jh.hyp - h) < 1e-10);
  CHECK(max_norm(jh.unip - Matrix::Identity(2, 2)) < 1e-10);
  CHECK(max_norm(jh.ell - Matrix::Identity(2, 2)) < 1e-10);

  const Matrix r = 3.0 * rotation(0.7);
  auto jr = real_jordan_decompose(r);
  CHECK(max_norm(jr.hyp - 3.0 * Matrix::Identity(2, 2)) < 1e-10);
  CHECK(max_norm(jr.ell - rotation(0.7)) < 1e-10);
}

TEST_CASE("jordan decomposition of conjugated block matrices") {
  Rng rng(11);
  // Jordan block for eigenvalue 2 plus 1/4: known factors before conjugation.
  Matrix j(3, 3), unip(3, 3), hyp(3, 3);
  j << 2, 1, 0, 0, 2, 0, 0, 0, 0.25;
  unip << 1, 0.5, 0, 0, 1, 0, 0, 0, 1;
  hyp = Eigen::Vector3d(2, 2, 0.25).asDiagonal();
  // Rotation block scaled by 2, eigenvalue -1/4 (negative: elliptic phase pi).
  Matrix k = Matrix::Zero(3, 3), kh = Matrix::Zero(3, 3), ke = Matrix::Zero(3, 3);
  k.topLeftCorner(2, 2) = 2.0 * rotation(1.1);
  k(2, 2) = -0.25;
  kh.topLeftCorner(2, 2) = 2.0 * Matrix::Identity(2, 2);
  kh(2, 2) = 0.25;
  ke.topLeftCorner(2, 2) = rotation(1.1);
  ke(2, 2) = -1.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix P = oracle::random_sl(rng, 3, 10.0);
    const Matrix Pi = P.inverse();
    const auto dj = real_jordan_decompose(P * j * Pi);
    check_triple(P * j * Pi, dj);
    CHECK(rel_diff(dj.unip, P * unip * Pi) < 1e-6);
    CHECK(rel_diff(dj.hyp, P * hyp * Pi) < 1e-6);
    const auto dk = real_jordan_decompose(P * k * Pi);
    check_triple(P * k * Pi, dk);
    CHECK(rel_diff(dk.hyp, P * kh * Pi) < 1e-9);
    CHECK(rel_diff(dk.ell, P * ke * Pi) < 1e-9);
  }
}

TEST_CASE("jordan decomposition is idempotent on its factors") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix g = oracle::random_sl(rng, 3);
    const auto t = real_jordan_decompose(g);
    check_triple(g, t);
    const auto th = real_jordan_decompose(t.hyp);
    CHECK(rel_diff(th.hyp, t.hyp) < 1e-8);
    CHECK(rel_diff(th.unip, Matrix::Identity(3, 3)) < 1e-8);
    const auto te = real_jordan_decompose(t.ell);
    CHECK(rel_diff(te.ell, t.ell) < 1e-8);
  }
}

TEST_CASE("nilpotent log and exp are inverse") {
  Matrix x(3, 3);
  x << 0, 0, 0, 1.5, 0, 0, -2, 0.75, 0;
  const Matrix g = unipotent_exp(x);
  CHECK(max_norm(g - x.exp()) < 1e-12);
  CHECK(max_norm(nilpotent_log(g) - x) < 1e-12);
  CHECK_THROWS_AS(nilpotent_log(Matrix(a_matrix(1))), Error);
  CHECK_THROWS_AS(unipotent_exp(Matrix(a_matrix(1))), Error);
}

TEST_CASE("structure constants") {
  for (const auto& alg : {LieAlgebra::sl2(), LieAlgebra::sl3(), LieAlgebra::sl2_sum_sl2()}) {
    CHECK(alg.antisymmetry_residual() < 1e-12);
    CHECK(alg.jacobi_residual() < 1e-12);
  }
  const auto sl2 = LieAlgebra::sl2();
  const Vector a = coords(sl2, {{"a", 1}}), u = coords(sl2, {{"u", 1}}), v = coords(sl2, {{"v", 1}});
  CHECK((sl2.bracket(u, a) - 2.0 * u).norm() < 1e-12);
  CHECK((sl2.bracket(v, a) + 2.0 * v).norm() < 1e-12);
  CHECK((sl2.ad(a) * u - sl2.bracket(u, a)).norm() < 1e-12);

  std::istringstream bad("dim 3\n0 1 2 1\n1 0 2 1\n");
  CHECK_THROWS_AS(LieAlgebra::parse(bad), Error);
  std::istringstream heis("dim 3\nlabel 0 x\nlabel 1 y\nlabel 2 z\n0 1 2 1\n");
  const auto h = LieAlgebra::parse(heis);
  CHECK(h.dim() == 3);
  CHECK(h.bracket(Vector::Unit(3, 1), Vector::Unit(3, 0))(2) == doctest::Approx(-1));
}

TEST_CASE("adjoint of exp agrees with the matrix exponential") {
  const auto sl3 = LieAlgebra::sl3();
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Vector x(sl3.dim());
    for (int i = 0; i < x.size(); ++i) x(i) = 0.5 * rng.normal();
    const Matrix g = sl3.to_matrix(x).exp();
    CHECK(max_norm(sl3.adjoint_of(g) - sl3.adjoint_exp(x)) < 1e-9);
    const Vector y = Vector::Unit(sl3.dim(), trial % sl3.dim());
    const Matrix direct = g.inverse() * sl3.to_matrix(y) * g;
    CHECK(max_norm(sl3.to_matrix(sl3.adjoint_of(g) * y) - direct) < 1e-9);
  }
}

TEST_CASE("weight decomposition of sl3") {
  const auto sl3 = LieAlgebra::sl3();
  const Vector a = coords(sl3, {{"H12", 1}, {"H23", 1}});
  const auto wd = weight_decomposition(sl3, a);
  // Weight of E_ij is a_j - a_i for a = diag(1, 0, -1).
  const double diag[3] = {1, 0, -1};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const std::string name = "E" + std::to_string(i + 1) + std::to_string(j + 1);
      const Vector e = coords(sl3, {{name.c_str(), 1}});
      const auto* ws = wd.find(diag[j] - diag[i]);
      REQUIRE(ws != nullptr);
      CHECK(span_residual(ws->basis, e) < 1e-10);
    }
  CHECK(wd.find(0)->basis.cols() == 2);
  CHECK(wd.find(2)->basis.cols() == 1);
  CHECK(grading_residual(sl3, wd) < 1e-9);
  CHECK(wd.spaces.front().weight == doctest::Approx(2));

  auto ab = LieAlgebra::from_matrix_basis({(Matrix(2, 2) << 0, -1, 1, 0).finished()}, {"r"});
  const auto single = weight_decomposition(ab, Vector::Ones(1));
  REQUIRE(single.spaces.size() == 1);
  CHECK(single.spaces[0].weight == doctest::Approx(0));

  const auto sl2 = LieAlgebra::sl2();
  CHECK_THROWS_AS(weight_decomposition(sl2, coords(sl2, {{"u", 1}, {"v", -1}})), Error);
  CHECK_THROWS_AS(weight_decomposition(sl2, coords(sl2, {{"u", 1}})), Error);
}

TEST_CASE("horospherical subalgebra and log jacobian") {
  const auto sl2 = LieAlgebra::sl2();
  for (double s : {0.1, 1.0, 3.0}) {
    const Matrix Ad = sl2.adjoint_of(a_matrix(s));
    const auto hs = horospherical_subalgebra(sl2, Ad);
    REQUIRE(hs.size() == 1);
    CHECK(span_residual(hs.basis, coords(sl2, {{"u", 1}})) < 1e-10);
    CHECK(log_jacobian(Ad, hs) == doctest::Approx(2 * s).epsilon(1e-12));
  }
  CHECK(horospherical_subalgebra(sl2, Matrix::Identity(3, 3)).size() == 0);
  CHECK(log_jacobian(sl2.adjoint_of(u_matrix(4)), SubalgebraBasis{coords(sl2, {{"u", 1}})}) ==
        doctest::Approx(0).epsilon(1e-12));
  CHECK(log_jacobian(Matrix::Identity(3, 3), SubalgebraBasis{Matrix(3, 0)}) == 0.0);
  CHECK_THROWS_AS(log_jacobian(sl2.adjoint_of(a_matrix(1)), SubalgebraBasis{coords(sl2, {{"u", 1}, {"v", 1}})}),
                  Error);

  const auto sl3 = LieAlgebra::sl3();
  Matrix g = Matrix::Zero(3, 3);
  g.diagonal() << std::exp(1.0), 1.0, std::exp(-1.0);
  const auto hs3 = horospherical_subalgebra(sl3, sl3.adjoint_of(g));
  Matrix lower(sl3.dim(), 3);
  lower << coords(sl3, {{"E21", 1}}), coords(sl3, {{"E31", 1}}), coords(sl3, {{"E32", 1}});
  CHECK(oracle::same_span(hs3.basis, lower));
  CHECK(log_jacobian(sl3.adjoint_of(g), hs3) == doctest::Approx(4));
}

TEST_CASE("S tilde in sl3") {
  const auto sl3 = LieAlgebra::sl3();
  const Vector a = coords(sl3, {{"H12", 1}, {"H23", 1}});
  auto cols = [&](std::initializer_list<const char*> names) {
    Matrix m(sl3.dim(), static_cast<Eigen::Index>(names.size()));
    Eigen::Index j = 0;
    for (const char* n : names) m.col(j++) = coords(sl3, {{n, 1}});
    return m;
  };
  auto check_case = [&](const Vector& a_elem, const Matrix& U, const Matrix& expected) {
    const auto S = compute_s_tilde(sl3, a_elem, SubalgebraBasis{U});
    CHECK(S.size() == expected.cols());
    CHECK(oracle::same_span(S.basis, expected));
    CHECK(oracle::same_span(S.basis, s_tilde_oracle(sl3, a_elem, U, 17)));
    CHECK(closure_residual(sl3, S.basis) < 1e-9);
  };

  SUBCASE("U is the whole expanding subalgebra") {
    check_case(a, cols({"E21", "E31", "E32"}), Matrix::Identity(8, 8));
  }
  SUBCASE("corner entry") {
    check_case(a, cols({"E31"}), cols({"E31", "E13", "H12", "H23"}));
  }
  SUBCASE("first column") {
    check_case(a, cols({"E21", "E31"}), cols({"E21", "E23", "E31", "E13", "H12", "H23"}));
  }
  SUBCASE("principal nilpotent line") {
    const Vector a2 = coords(sl3, {{"H12", 2}, {"H23", 2}});
    Matrix U(8, 1);
    U.col(0) = coords(sl3, {{"E21", 1}, {"E32", 1}});
    Matrix expected(8, 3);
    expected << coords(sl3, {{"E12", 1}, {"E23", 1}}), U.col(0), coords(sl3, {{"H12", 1}, {"H23", 1}});
    check_case(a2, U, expected);
    // diag(1, -2, 1) is not in S~: its bracket with u leaves g_- + g_0 + U.
    const auto wd = weight_decomposition(sl3, a2);
    const Vector x = coords(sl3, {{"H12", 1}, {"H23", -1}});
    CHECK(s_tilde_membership_residual(sl3, wd, SubalgebraBasis{U}, x, U.col(0)) > 1.0);
  }
}

TEST_CASE("S tilde in sl2 + sl2") {
  const auto alg = LieAlgebra::sl2_sum_sl2();
  const Vector a = coords(alg, {{"a1", 1}, {"a2", 1}});
  Matrix U(6, 1);
  U.col(0) = coords(alg, {{"u1", 1}, {"u2", 1}});
  Matrix diag(6, 3);
  diag << coords(alg, {{"a1", 1}, {"a2", 1}}), U.col(0), coords(alg, {{"v1", 1}, {"v2", 1}});
  const auto S = compute_s_tilde(alg, a, SubalgebraBasis{U});
  CHECK(S.size() == 3);
  CHECK(oracle::same_span(S.basis, diag));

  Matrix both(6, 2);
  both << coords(alg, {{"u1", 1}}), coords(alg, {{"u2", 1}});
  CHECK(compute_s_tilde(alg, a, SubalgebraBasis{both}).size() == 6);
}

TEST_CASE("sl2 module structure") {
  const auto sl2 = LieAlgebra::sl2();
  const Vector a = coords(sl2, {{"a", 1}}), u = coords(sl2, {{"u", 1}}), v = coords(sl2, {{"v", 1}});
  // Row action w -> w ad(x)^T.
  const Matrix A = sl2.ad(a).transpose(), U = sl2.ad(u).transpose(), V = sl2.ad(v).transpose();
  const auto adj = sl2_module_structure(A, U, V);
  CHECK(adj.highest_weights() == std::vector<int>{2});
  CHECK(sl2_relation_residual(adj, A, U, V) < 1e-10);

  const Matrix Z = Matrix::Zero(2, 2);
  CHECK(sl2_module_structure(Z, Z, Z).highest_weights() == std::vector<int>{0, 0});

  // Row vectors times the defining matrices.
  const Matrix As = sl2.to_matrix(a), Us = sl2.to_matrix(u), Vs = sl2.to_matrix(v);
  const auto std_rep = sl2_module_structure(As, Us, Vs);
  CHECK(std_rep.highest_weights() == std::vector<int>{1});
  CHECK(sl2_relation_residual(std_rep, As, Us, Vs) < 1e-10);

  // sl3 under the principal sl2: weights 4 and 2.
  const auto sl3 = LieAlgebra::sl3();
  const Vector pa = coords(sl3, {{"H12", 2}, {"H23", 2}});
  const Vector pu = coords(sl3, {{"E21", 2}, {"E32", 2}});
  const Vector pv = coords(sl3, {{"E12", 1}, {"E23", 1}});
  const Matrix PA = sl3.ad(pa).transpose(), PU = sl3.ad(pu).transpose(), PV = sl3.ad(pv).transpose();
  auto hw = sl2_module_structure(PA, PU, PV).highest_weights();
  std::sort(hw.begin(), hw.end());
  CHECK(hw == std::vector<int>{2, 4});

  CHECK_THROWS_AS(sl2_module_structure(A, U, 2.0 * V), Error);
}
