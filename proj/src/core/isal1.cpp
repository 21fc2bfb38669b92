#include <limits>

#include "core/solver_common.hpp"

namespace l1p {

using detail::finish;
using detail::SolveClock;

// Projected Polyak-type subgradient steps towards the level phi, a dual lower
// bound. lambda halves after `isal1_patience` steps without improving the
// best objective; the run stops once lambda drops below the floor.
SolveResult isal1_solve(const BpInstance& instance,
                        const SolverOptions& options) {
  options.validate();
  instance.validate();
  SolveClock clock(options.time_limit);
  SolveResult result;
  const Index n = instance.cols();
  const Index m = instance.rows();

  if (instance.b.isZero(0.0)) {
    finish(result, instance, Vector::Zero(n), SolveStatus::Optimal, clock);
    return result;
  }

  Trajectory& log = result.trajectory;
  try {
    const AffineProjector projector = detail::make_projector(instance, options);

    Vector x = projector.project(Vector::Zero(n));
    ++result.affine_projections;

    // w = b gives a cheap valid bound to start from.
    double phi = std::max(0.0, dual_lower_bound(instance, instance.b));
    Vector phi_dual = instance.b;
    auto raise_bound = [&](const Vector& w) {
      const double bound = dual_lower_bound(instance, w);
      if (bound > phi) {
        phi = bound;
        phi_dual = w;
      }
    };

    double step_scale = 1.0;
    double best = std::numeric_limits<double>::infinity();
    Vector best_x = x;
    std::size_t since_improvement = 0;
    Support previous_support;

    for (std::size_t k = 0; k < options.max_outer; ++k) {
      if (clock.expired()) {
        finish(result, instance, std::move(best_x), SolveStatus::TimeLimit,
               clock);
        return result;
      }
      result.outer_iterations = k + 1;
      const double f = x.lpNorm<1>();
      if (f < best) {
        best = f;
        best_x = x;
      }

      if (options.hoc) {
        Support current =
            support_of(x, options.hoc_tau_abs, options.hoc_tau_rel);
        // Iterates stay dense until close to convergence; skip the solve
        // while the support cannot be a basis.
        if (static_cast<Index>(current.size()) <= m &&
            hoc_trigger_policy(previous_support, current)) {
          HocOutcome hoc;
          auto x_hat = detail::try_hoc(instance, x, options, result, &hoc);
          if (x_hat) {
            finish(result, instance, std::move(*x_hat),
                   SolveStatus::HocOptimal, clock);
            return result;
          }
          if (hoc.w_hat.size() == m) raise_bound(hoc.w_hat);
        }
        previous_support = std::move(current);
      }

      // A feasible point within tolerance of a dual bound is optimal.
      if (f - phi <= options.hoc_tol * f) {
        const double scale = instance.a->multiply_transposed(phi_dual)
                                 .lpNorm<Eigen::Infinity>();
        result.certificate = phi_dual / scale;
        result.duality_gap = (f - phi) / f;
        finish(result, instance, std::move(x), SolveStatus::Optimal, clock);
        return result;
      }

      Vector h(n);
      for (Index i = 0; i < n; ++i) {
        h[i] = x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0);
      }
      const double step = step_scale * (f - phi) / h.squaredNorm();
      const Vector next = projector.project(x - step * h);
      ++result.affine_projections;

      TrajectoryPoint point;
      point.k = k;
      point.r = f;
      point.norm_d = (next - x).norm();
      point.norm1_z = f;
      point.elapsed = clock.elapsed();
      if (options.record_trajectory) log.push_back(point);

      x = next;
      if (x.lpNorm<1>() < best * (1.0 - 1e-12)) {
        since_improvement = 0;
      } else if (++since_improvement >= options.isal1_patience) {
        step_scale *= 0.5;
        since_improvement = 0;
        if (step_scale < options.isal1_step_floor) {
          if (x.lpNorm<1>() < best) best_x = x;
          finish(result, instance, std::move(best_x), SolveStatus::Stalled,
                 clock);
          return result;
        }
      }
    }
    if (x.lpNorm<1>() < best) best_x = x;
    finish(result, instance, std::move(best_x), SolveStatus::IterLimit, clock);
    return result;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SolverFailure ||
        e.code() == ErrorCode::NotPositiveDefinite) {
      throw SolverError(std::string("isal1: ") + e.what(), log);
    }
    throw;
  }
}

}  // namespace l1p
