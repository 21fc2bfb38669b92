#include "core/map_engine.hpp"

#include <string>

namespace l1p {

void MapConfig::validate() const {
  if (!(feasibility_tol > 0.0) || !(stall_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "MAP tolerances must be positive");
  }
  if (max_iterations < 1) {
    throw Error(ErrorCode::InvalidArgument, "MAP iteration cap must be >= 1");
  }
}

const char* to_string(MapStatus status) {
  switch (status) {
    case MapStatus::Intersecting: return "Intersecting";
    case MapStatus::BestPair: return "BestPair";
    case MapStatus::Stalled: return "Stalled";
    case MapStatus::Interrupted: return "Interrupted";
  }
  return "?";
}

MapOutcome run_map(const L1Ball& ball, const AffineProjector& projector,
                   const Vector& z_start, const MapConfig& config,
                   const MapTrace& trace,
                   std::optional<Clock::time_point> deadline) {
  config.validate();
  if (z_start.size() != projector.dimension()) {
    throw Error(ErrorCode::DimensionMismatch,
                "run_map: start has length " + std::to_string(z_start.size()) +
                    ", expected " + std::to_string(projector.dimension()));
  }
  if (!ball.contains(z_start, 1e-12)) {
    throw Error(ErrorCode::InvalidArgument,
                "run_map: start point lies outside the l1 ball");
  }

  MapOutcome out;
  out.z = z_start;
  double previous_gap = 0.0;
  for (std::size_t j = 1; j <= config.max_iterations; ++j) {
    if (deadline && Clock::now() >= *deadline) {
      out.status = MapStatus::Interrupted;
      return out;
    }
    out.x = projector.project(out.z);
    ++out.affine_projections;
    out.z = project_l1_ball(ball, out.x);
    ++out.ball_projections;
    out.iterations = j;

    const Vector diff = out.z - out.x;
    out.gap = diff.norm();
    if (trace) trace(j, out.gap);

    const double sup = diff.lpNorm<Eigen::Infinity>();
    if (sup <= config.feasibility_tol ||
        sup <= config.feasibility_tol * out.x.lpNorm<Eigen::Infinity>()) {
      out.status = MapStatus::Intersecting;
      return out;
    }
    if (j > 1 &&
        previous_gap - out.gap <= config.stall_tol * previous_gap) {
      out.status = MapStatus::BestPair;
      return out;
    }
    previous_gap = out.gap;
  }
  out.status = MapStatus::Stalled;
  return out;
}

}  // namespace l1p
