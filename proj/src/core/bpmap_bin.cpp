#include "core/solver_common.hpp"

namespace l1p {

using detail::finish;
using detail::SolveClock;

// Bracket r_k < r-bar <= R_k kept as (lower, width) so that every update
// scales the width by exactly alpha or 1 - alpha.
SolveResult bpmap_bin_solve(const BpInstance& instance,
                            const SolverOptions& options) {
  options.validate();
  instance.validate();
  SolveClock clock(options.time_limit);
  SolveResult result;
  const Index n = instance.cols();
  const double alpha = options.bin_alpha;

  if (instance.b.isZero(0.0)) {
    finish(result, instance, Vector::Zero(n), SolveStatus::Optimal, clock);
    return result;
  }

  Trajectory& log = result.trajectory;
  try {
    const AffineProjector projector = detail::make_projector(instance, options);

    // P_M(0) is feasible with l1-norm R_0: the first incumbent.
    Vector incumbent = projector.project(Vector::Zero(n));
    ++result.affine_projections;
    double lower = 0.0;
    double width = incumbent.lpNorm<1>();
    Vector warm = Vector::Zero(n);
    Support previous_support;

    for (std::size_t k = 0;; ++k) {
      const double upper = lower + width;
      if (width <= options.bin_gap_tol ||
          width <= options.bin_gap_tol * upper) {
        finish(result, instance, std::move(incumbent), SolveStatus::Optimal,
               clock);
        return result;
      }
      if (k >= options.max_outer) {
        finish(result, instance, std::move(incumbent), SolveStatus::IterLimit,
               clock);
        return result;
      }
      if (clock.expired()) {
        finish(result, instance, std::move(incumbent), SolveStatus::TimeLimit,
               clock);
        return result;
      }

      const double test_radius = lower + (1.0 - alpha) * width;
      const MapOutcome map = run_map(L1Ball(test_radius), projector, warm,
                                     options.map, {}, clock.deadline());
      result.outer_iterations = k + 1;
      result.inner_iterations += map.iterations;
      result.affine_projections += map.affine_projections;
      result.ball_projections += map.ball_projections;
      result.final_gap = map.gap;

      TrajectoryPoint point;
      point.k = k;
      point.r = lower;
      point.upper = upper;
      point.width = width;
      point.norm_d = map.gap;
      point.norm1_z = map.z.size() ? map.z.lpNorm<1>() : 0.0;
      point.inner_iters = map.iterations;
      point.elapsed = clock.elapsed();
      if (options.record_trajectory) log.push_back(point);

      switch (map.status) {
        case MapStatus::BestPair:
          lower = test_radius;
          width *= alpha;
          warm = map.z;
          break;
        case MapStatus::Intersecting:
          width *= 1.0 - alpha;
          incumbent = map.x;
          break;
        case MapStatus::Stalled:
          // Inconclusive emptiness test: report rather than guess.
          finish(result, instance, std::move(incumbent), SolveStatus::Stalled,
                 clock);
          return result;
        case MapStatus::Interrupted:
          finish(result, instance, std::move(incumbent),
                 SolveStatus::TimeLimit, clock);
          return result;
      }

      if (options.hoc) {
        Support current =
            support_of(map.z, options.hoc_tau_abs, options.hoc_tau_rel);
        if (hoc_trigger_policy(previous_support, current)) {
          if (auto x_hat = detail::try_hoc(instance, map.z, options, result)) {
            finish(result, instance, std::move(*x_hat),
                   SolveStatus::HocOptimal, clock);
            return result;
          }
        }
        previous_support = std::move(current);
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SolverFailure ||
        e.code() == ErrorCode::NotPositiveDefinite) {
      throw SolverError(std::string("bpmap-bin: ") + e.what(), log);
    }
    throw;
  }
}

}  // namespace l1p
