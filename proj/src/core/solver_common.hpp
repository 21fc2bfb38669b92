#pragma once

// Internal helpers shared by the solver implementations.

#include "core/solvers.hpp"

namespace l1p::detail {

class SolveClock {
 public:
  explicit SolveClock(double time_limit)
      : start_(Clock::now()),
        deadline_(start_ + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(time_limit))) {}

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }
  bool expired() const { return Clock::now() >= deadline_; }
  Clock::time_point deadline() const { return deadline_; }

 private:
  Clock::time_point start_;
  Clock::time_point deadline_;
};

AffineProjector make_projector(const BpInstance& instance,
                               const SolverOptions& options);

// Fills objective, residual, wall time and status.
void finish(SolveResult& result, const BpInstance& instance, Vector x,
            SolveStatus status, const SolveClock& clock);

// Runs HOC and accepts the answer only if the independent certificate check
// agrees. On acceptance returns x-hat and stores the certificate in `result`.
std::optional<Vector> try_hoc(const BpInstance& instance, const Vector& x,
             const SolverOptions& options, SolveResult& result,
             HocOutcome* outcome = nullptr);

}  // namespace l1p::detail
