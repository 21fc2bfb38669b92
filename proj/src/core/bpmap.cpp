#include "core/solver_common.hpp"

namespace l1p {

using detail::finish;
using detail::SolveClock;

SolveResult bpmap_solve(const BpInstance& instance,
                        const SolverOptions& options) {
  options.validate();
  instance.validate();
  SolveClock clock(options.time_limit);
  SolveResult result;
  const Index n = instance.cols();

  if (instance.b.isZero(0.0)) {
    finish(result, instance, Vector::Zero(n), SolveStatus::Optimal, clock);
    return result;
  }

  Trajectory& log = result.trajectory;
  try {
    const AffineProjector projector = detail::make_projector(instance, options);

    Vector z = Vector::Zero(n);
    Vector x;
    double r = 0.0;
    Support previous_support;

    for (std::size_t k = 0; k < options.max_outer; ++k) {
      if (clock.expired()) {
        finish(result, instance, x.size() ? x : projector.project(z),
               SolveStatus::TimeLimit, clock);
        return result;
      }
      x = projector.project(z);
      ++result.affine_projections;
      const double norm_d = (z - x).norm();
      result.outer_iterations = k + 1;

      if (options.hoc) {
        Support current =
            support_of(z, options.hoc_tau_abs, options.hoc_tau_rel);
        if (hoc_trigger_policy(previous_support, current)) {
          if (auto x_hat = detail::try_hoc(instance, z, options, result)) {
            finish(result, instance, std::move(*x_hat),
                   SolveStatus::HocOptimal, clock);
            return result;
          }
        }
        previous_support = std::move(current);
      }

      const double r_next = r + norm_d;
      TrajectoryPoint point;
      point.k = k;
      point.r = r;
      point.norm_d = norm_d;
      point.norm1_z = z.lpNorm<1>();

      const MapOutcome map = run_map(L1Ball(r_next), projector, z, options.map,
                                     {}, clock.deadline());
      result.inner_iterations += map.iterations;
      result.final_gap = map.gap;
      result.affine_projections += map.affine_projections;
      result.ball_projections += map.ball_projections;
      point.inner_iters = map.iterations;
      point.elapsed = clock.elapsed();
      if (options.record_trajectory) log.push_back(point);

      switch (map.status) {
        case MapStatus::Intersecting:
          finish(result, instance, map.x, SolveStatus::Optimal, clock);
          return result;
        case MapStatus::BestPair:
          if (r_next == r) {
            finish(result, instance, map.x, SolveStatus::Stalled, clock);
            return result;
          }
          z = map.z;
          r = r_next;
          break;
        case MapStatus::Stalled:
          finish(result, instance, map.x, SolveStatus::Stalled, clock);
          return result;
        case MapStatus::Interrupted:
          finish(result, instance, map.x.size() ? map.x : x,
                 SolveStatus::TimeLimit, clock);
          return result;
      }
    }
    finish(result, instance, projector.project(z), SolveStatus::IterLimit,
           clock);
    return result;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SolverFailure ||
        e.code() == ErrorCode::NotPositiveDefinite) {
      throw SolverError(std::string("bpmap: ") + e.what(), log);
    }
    throw;
  }
}

}  // namespace l1p
