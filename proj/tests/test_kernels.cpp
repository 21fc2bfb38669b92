#include <doctest.h>

#include "core/error.hpp"
#include "core/kernels.hpp"
#include "test_util.hpp"

using namespace l1p;
using l1p::test::randn;

TEST_CASE("matvec small cases") {
  Matrix eye(DenseMatrix(DenseMatrix::Identity(2, 2)));
  Vector x(2);
  x << 3, -1;
  CHECK(matvec(eye, x) == x);

  DenseMatrix row(1, 2);
  row << 1, 2;
  Vector y(2);
  y << 2, 0;
  CHECK(matvec(Matrix(row), y)[0] == 2.0);

  CHECK_THROWS_AS(matvec(eye, Vector::Zero(3)), Error);
}

TEST_CASE("sparse and dense products agree") {
  std::mt19937_64 rng(11);
  std::bernoulli_distribution keep(0.4);
  for (int trial = 0; trial < 100; ++trial) {
    DenseMatrix a = randn(rng, 5, 8);
    for (Index j = 0; j < 8; ++j)
      for (Index i = 0; i < 5; ++i)
        if (!keep(rng)) a(i, j) = 0.0;
    const Matrix dense(a);
    const Matrix sparse(to_sparse(a));
    REQUIRE(sparse.is_sparse());
    const Vector x = randn(rng, 8);
    const Vector y = randn(rng, 5);
    CHECK(l1p::test::inf_dist(dense.multiply(x), sparse.multiply(x)) <= 1e-14);
    CHECK(l1p::test::inf_dist(dense.multiply_transposed(y),
                              sparse.multiply_transposed(y)) <= 1e-14);
    CHECK((dense.gram() - sparse.gram()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("matvec is linear") {
  std::mt19937_64 rng(3);
  const Matrix a(randn(rng, 7, 13));
  for (int trial = 0; trial < 50; ++trial) {
    const Vector x = randn(rng, 13), y = randn(rng, 13);
    const double alpha = randn(rng, 1)[0], beta = randn(rng, 1)[0];
    const Vector lhs = matvec(a, alpha * x + beta * y);
    const Vector rhs = alpha * matvec(a, x) + beta * matvec(a, y);
    CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
  }
}

TEST_CASE("matrix validation") {
  DenseMatrix bad(1, 2);
  bad << 1, std::nan("");
  CHECK_THROWS_AS(Matrix{bad}, Error);
  SparseMatrixCsc s(2, 2);
  s.insert(0, 0) = 0.0;  // explicit zero
  s.makeCompressed();
  CHECK_THROWS_AS(Matrix{s}, Error);
}

TEST_CASE("solve_spd hand cases") {
  for (SpdMode mode : {SpdMode::Cholesky, SpdMode::ConjugateGradient}) {
    auto eye = std::make_shared<const Matrix>(DenseMatrix(DenseMatrix::Identity(2, 2)));
    Vector rhs(2);
    rhs << 4, 5;
    const auto r = solve_spd(SpdSolver(eye, mode), rhs);
    REQUIRE(r.ok());
    CHECK(l1p::test::inf_dist(r.solution, rhs) <= 1e-12);

    DenseMatrix a(1, 2);
    a << 2, 0;
    Vector eight(1);
    eight << 8;
    const auto w = solve_spd(SpdSolver(std::make_shared<const Matrix>(a), mode), eight);
    REQUIRE(w.ok());
    CHECK(w.solution[0] == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("cholesky and cg agree and meet the residual contract") {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 10; ++trial) {
    DenseMatrix ad = randn(rng, 20, 50);
    auto dense = std::make_shared<const Matrix>(ad);
    auto sparse = std::make_shared<const Matrix>(to_sparse(ad));
    const Vector rhs = randn(rng, 20);
    const SpdSolver chol(dense, SpdMode::Cholesky);
    const SpdSolver cg(sparse, SpdMode::ConjugateGradient);
    const auto a = chol.solve(rhs);
    const auto b = cg.solve(rhs);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    for (const auto* r : {&a, &b}) {
      const Vector res = ad * (ad.transpose() * r->solution) - rhs;
      CHECK(res.norm() <= kDefaultSpdTolerance * (1.0 + rhs.norm()));
    }
    CHECK(l1p::test::inf_dist(a.solution, b.solution) <= 1e-7);
  }
}

TEST_CASE("rank deficiency is reported") {
  DenseMatrix a(2, 3);
  a << 1, 2, 3, 2, 4, 6;
  auto m = std::make_shared<const Matrix>(a);
  try {
    SpdSolver s(m, SpdMode::Cholesky);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveDefinite);
  }
}

TEST_CASE("cg reports the iteration cap instead of returning garbage") {
  std::mt19937_64 rng(5);
  auto a = std::make_shared<const Matrix>(to_sparse(randn(rng, 30, 40)));
  const SpdSolver cg(a, SpdMode::ConjugateGradient, 1e-300);
  const auto r = cg.solve(randn(rng, 30));
  CHECK_FALSE(r.ok());
  CHECK(r.iterations <= cg.max_cg_iterations());
}
