#pragma once

#include <memory>

#include "core/kernels.hpp"

namespace l1p {

/// Orthogonal projector onto M = {x : A x = b}.
///
/// project(z) = z - A^T w with (A A^T) w = A z - b. A must have full row
/// rank; a failing SPD solve surfaces as an Error with code SolverFailure.
class AffineProjector {
 public:
  AffineProjector(std::shared_ptr<const Matrix> a, Vector b);
  AffineProjector(std::shared_ptr<const Matrix> a, Vector b, SpdMode mode,
                  double tolerance = kDefaultSpdTolerance);

  Vector project(const Vector& z) const;

  const Matrix& matrix() const noexcept { return *a_; }
  const std::shared_ptr<const Matrix>& matrix_ptr() const noexcept {
    return a_;
  }
  const Vector& rhs() const noexcept { return b_; }
  const SpdSolver& backend() const noexcept { return solver_; }
  Index dimension() const noexcept { return a_->cols(); }

 private:
  std::shared_ptr<const Matrix> a_;
  Vector b_;
  SpdSolver solver_;
};

Vector project_affine(const AffineProjector& projector, const Vector& z);

/// The l1 ball B(0, r).
class L1Ball {
 public:
  explicit L1Ball(double radius);
  double radius() const noexcept { return radius_; }
  bool contains(const Vector& z, double rel_slack = 0.0) const;

 private:
  double radius_;
};

// Soft-threshold level theta with || soft(z, theta) ||_1 = r, or 0 when z is
// already inside the ball.
double l1_threshold(const L1Ball& ball, const Vector& z);

// Exact Euclidean projection onto the ball by sorting magnitudes.
Vector project_l1_ball(const L1Ball& ball, const Vector& z);

// Reference projection: 200 bisection steps on theta in [0, ||z||_inf].
// Slow and independent of the sort-based path; for testing.
Vector l1_projection_oracle(const L1Ball& ball, const Vector& z);

// sign(z) * max(|z| - theta, 0)
Vector soft_threshold(const Vector& z, double theta);

}  // namespace l1p
