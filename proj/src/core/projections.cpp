#include "core/projections.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace l1p {

namespace {

void require_finite(const Vector& z, const char* where) {
  if (!z.allFinite()) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(where) + ": input has non-finite entries");
  }
}

}  // namespace

AffineProjector::AffineProjector(std::shared_ptr<const Matrix> a, Vector b)
    : AffineProjector(a, std::move(b), SpdSolver::default_mode(*a)) {}

AffineProjector::AffineProjector(std::shared_ptr<const Matrix> a, Vector b,
                                 SpdMode mode, double tolerance)
    : a_(std::move(a)), b_(std::move(b)), solver_(a_, mode, tolerance) {
  if (b_.size() != a_->rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "rhs has length " + std::to_string(b_.size()) +
                    ", matrix has " + std::to_string(a_->rows()) + " rows");
  }
  require_finite(b_, "affine projector");
}

Vector AffineProjector::project(const Vector& z) const {
  if (z.size() != a_->cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "affine projection: z has length " + std::to_string(z.size()) +
                    ", expected " + std::to_string(a_->cols()));
  }
  const Vector residual = a_->multiply(z) - b_;
  const SpdSolveResult w = solver_.solve(residual);
  if (!w.ok()) {
    throw Error(ErrorCode::SolverFailure,
                "affine projection: SPD solve did not converge after " +
                    std::to_string(w.iterations) +
                    " iterations (residual " + std::to_string(w.residual) +
                    ")");
  }
  return z - a_->multiply_transposed(w.solution);
}

Vector project_affine(const AffineProjector& projector, const Vector& z) {
  return projector.project(z);
}

L1Ball::L1Ball(double radius) : radius_(radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidArgument,
                "l1 ball radius must be finite and nonnegative");
  }
}

bool L1Ball::contains(const Vector& z, double rel_slack) const {
  return z.lpNorm<1>() <= radius_ * (1.0 + rel_slack);
}

Vector soft_threshold(const Vector& z, double theta) {
  Vector out(z.size());
  for (Index i = 0; i < z.size(); ++i) {
    const double shrunk = std::abs(z[i]) - theta;
    out[i] = shrunk > 0.0 ? std::copysign(shrunk, z[i]) : 0.0;
  }
  return out;
}

double l1_threshold(const L1Ball& ball, const Vector& z) {
  require_finite(z, "l1 projection");
  const double r = ball.radius();
  const double norm1 = z.lpNorm<1>();
  if (norm1 <= r) return 0.0;
  std::vector<double> mags(static_cast<std::size_t>(z.size()));
  for (Index i = 0; i < z.size(); ++i) mags[i] = std::abs(z[i]);
  if (r == 0.0) return *std::max_element(mags.begin(), mags.end());
  std::sort(mags.begin(), mags.end(), std::greater<>());

  // Largest k with u_k > (sum_{i<=k} u_i - r) / k; theta follows from it.
  double prefix = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    prefix += mags[k];
    const double candidate = (prefix - r) / static_cast<double>(k + 1);
    if (mags[k] > candidate) {
      theta = candidate;
    } else {
      break;
    }
  }
  return std::max(theta, 0.0);
}

Vector project_l1_ball(const L1Ball& ball, const Vector& z) {
  const double theta = l1_threshold(ball, z);
  if (theta == 0.0) return z;
  return soft_threshold(z, theta);
}

Vector l1_projection_oracle(const L1Ball& ball, const Vector& z) {
  require_finite(z, "l1 projection oracle");
  const double r = ball.radius();
  if (z.lpNorm<1>() <= r) return z;
  auto mass = [&](double theta) {
    double s = 0.0;
    for (Index i = 0; i < z.size(); ++i) {
      s += std::max(std::abs(z[i]) - theta, 0.0);
    }
    return s;
  };
  double lo = 0.0;
  double hi = z.lpNorm<Eigen::Infinity>();
  for (int step = 0; step < 200; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (mass(mid) > r) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return soft_threshold(z, hi);
}

}  // namespace l1p
