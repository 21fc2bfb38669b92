#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "core/projections.hpp"
#include "test_util.hpp"

using namespace l1p;
using l1p::test::inf_dist;
using l1p::test::randn;

namespace {

AffineProjector projector_for(const DenseMatrix& a, const Vector& b) {
  return AffineProjector(std::make_shared<const Matrix>(a), b);
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  std::copy(v.begin(), v.end(), out.data());
  return out;
}

}  // namespace

TEST_CASE("affine projection hand cases") {
  DenseMatrix ones(1, 2);
  ones << 1, 1;
  CHECK(inf_dist(project_affine(projector_for(ones, vec({2})), Vector::Zero(2)),
                 vec({1, 1})) <= 1e-14);

  DenseMatrix row(1, 2);
  row << 1, 2;
  CHECK(inf_dist(project_affine(projector_for(row, vec({2})), Vector::Zero(2)),
                 vec({0.4, 0.8})) <= 1e-14);
}

TEST_CASE("affine projection fixes points of M and is idempotent") {
  std::mt19937_64 rng(8);
  for (bool sparse : {false, true}) {
    const DenseMatrix a = randn(rng, 15, 40);
    const Vector xs = randn(rng, 40);
    const Vector b = a * xs;
    auto m = sparse ? std::make_shared<const Matrix>(to_sparse(a))
                    : std::make_shared<const Matrix>(a);
    const AffineProjector p(m, b);
    // Cholesky is exact to rounding; CG only to its residual tolerance.
    const double tol = sparse ? kDefaultSpdTolerance : 1e-10;
    CHECK(inf_dist(p.project(xs), xs) <= tol);
    for (int t = 0; t < 20; ++t) {
      const Vector z = randn(rng, 40);
      const Vector x = p.project(z);
      const double scale = sparse ? 1.0 + (a * z - b).norm() : 1.0 + b.norm();
      CHECK((a * x - b).norm() <= (sparse ? tol : 1e-8) * scale);
      CHECK(inf_dist(p.project(x), x) <= (sparse ? 10 * tol : 1e-10));
      // z - P(z) is orthogonal to M - P(z).
      const Vector y = p.project(randn(rng, 40));
      const double ip_scale = (z - x).norm() * (y - x).norm() + 1.0;
      CHECK(std::abs((z - x).dot(y - x)) <= (sparse ? 10 * tol : 1e-8) * ip_scale);
      const Vector u = randn(rng, 40), v = randn(rng, 40);
      CHECK((p.project(u) - p.project(v)).norm() <=
            (u - v).norm() + (sparse ? 10 * tol : 1e-10));
    }
  }
}

TEST_CASE("l1 ball projection hand cases") {
  CHECK(project_l1_ball(L1Ball(5), vec({1, -2})) == vec({1, -2}));
  CHECK(inf_dist(project_l1_ball(L1Ball(2), vec({3, 1})), vec({2, 0})) <= 1e-15);
  CHECK(l1_threshold(L1Ball(2), vec({3, 1})) == doctest::Approx(1.0));
  CHECK(project_l1_ball(L1Ball(0), vec({3, -1, 2})).isZero(0.0));
  // ||z||_1 == r exactly: theta = 0.
  CHECK(project_l1_ball(L1Ball(3), vec({1, -2})) == vec({1, -2}));
  // Ties shrink together.
  const Vector t = project_l1_ball(L1Ball(1), vec({2, -2}));
  CHECK(t[0] == doctest::Approx(0.5));
  CHECK(t[1] == doctest::Approx(-0.5));
  // Entries at the threshold map to exactly zero.
  // theta = 1 exactly.
  const Vector z = project_l1_ball(L1Ball(2), vec({3, 1, -1}));
  CHECK(z[0] == 2.0);
  CHECK(z[1] == 0.0);
  CHECK(z[2] == 0.0);
  CHECK_THROWS(L1Ball(-1));
}

TEST_CASE("l1 ball projection properties") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.5);
  for (Index n : {1, 2, 10, 500}) {
    for (int t = 0; t < 50; ++t) {
      const Vector z = randn(rng, n);
      const double r = unif(rng) * z.lpNorm<1>();
      const L1Ball ball(r);
      const Vector p = project_l1_ball(ball, z);
      CHECK(inf_dist(p, l1_projection_oracle(ball, z)) <= 1e-9);
      CHECK(p.lpNorm<1>() ==
            doctest::Approx(std::min(r, z.lpNorm<1>())).epsilon(1e-10));
      CHECK(inf_dist(project_l1_ball(ball, p), p) <= 1e-10);
      for (Index i = 0; i < n; ++i) CHECK(p[i] * z[i] >= 0.0);
      const Vector w = randn(rng, n);
      CHECK((project_l1_ball(ball, w) - p).norm() <= (w - z).norm() + 1e-10);
    }
  }
}
