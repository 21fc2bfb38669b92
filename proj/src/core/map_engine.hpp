#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>

#include "core/projections.hpp"

namespace l1p {

using Clock = std::chrono::steady_clock;

struct MapConfig {
  double feasibility_tol = 1e-6;
  double stall_tol = 1e-6;
  std::size_t max_iterations = 1'000'000;

  void validate() const;
};

enum class MapStatus {
  Intersecting,  // x and P_ball(x) agree to feasibility_tol
  BestPair,      // the gap stopped improving: (x, z) approximates a BAP
  Stalled,       // iteration cap reached without either verdict
  Interrupted,   // caller deadline expired
};

const char* to_string(MapStatus status);

/// Result of one alternating-projection run between B(0, r) and M.
///
/// `x` is the last affine projection (so A x = b to backend tolerance) and
/// `z` = P_ball(x). For Intersecting, `x` is the point handed back; for
/// BestPair the displacement is z - x.
struct MapOutcome {
  MapStatus status = MapStatus::Stalled;
  Vector x;
  Vector z;
  double gap = 0.0;  // ||z - x||_2 of the final pair
  std::size_t iterations = 0;
  std::size_t affine_projections = 0;
  std::size_t ball_projections = 0;

  const Vector& point() const noexcept { return x; }
  Vector displacement() const { return z - x; }
};

// Called once per sweep with (j, g_j), j starting at 1.
using MapTrace = std::function<void(std::size_t, double)>;

/// Alternates x <- P_M(z), z <- P_ball(x) starting from z_start.
///
/// After each sweep: Intersecting once ||x - z||_inf <= feasibility_tol, either
/// absolutely or relative to ||x||_inf; then BestPair once the gap
/// g_j = ||z - x||_2 improves by no more than stall_tol * g_{j-1}. The first
/// sweep never stalls. z_start must lie in the ball (up to 1e-12 relative).
MapOutcome run_map(const L1Ball& ball, const AffineProjector& projector,
                   const Vector& z_start, const MapConfig& config,
                   const MapTrace& trace = {},
                   std::optional<Clock::time_point> deadline = std::nullopt);

}  // namespace l1p
