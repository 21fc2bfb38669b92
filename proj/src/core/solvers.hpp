#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "core/instance.hpp"
#include "core/map_engine.hpp"

namespace l1p {

struct SolverOptions {
  MapConfig map;
  std::size_t max_outer = 100'000;
  double time_limit = 3600.0;  // seconds
  bool hoc = false;
  double hoc_tau_abs = 1e-12;
  double hoc_tau_rel = 1e-10;
  double hoc_tol = 1e-6;
  double bin_alpha = 0.9;
  double bin_gap_tol = 1e-6;
  // ISAL1 step schedule.
  std::size_t isal1_patience = 50;
  double isal1_step_floor = 1e-10;
  // Backend for P_M; empty picks Cholesky for dense A and CG for sparse A.
  std::optional<SpdMode> spd_mode;
  double spd_tol = kDefaultSpdTolerance;
  bool record_trajectory = true;

  void validate() const;
};

enum class SolveStatus { Optimal, HocOptimal, Stalled, IterLimit, TimeLimit };

const char* to_string(SolveStatus status);
std::optional<SolveStatus> parse_solve_status(std::string_view text);

inline bool is_success(SolveStatus s) noexcept {
  return s == SolveStatus::Optimal || s == SolveStatus::HocOptimal;
}

/// One outer step. `upper` and `width` are only set by the binary-search
/// variant; `width` is tracked directly so bracket ratios stay exact.
struct TrajectoryPoint {
  std::size_t k = 0;
  double r = 0.0;
  std::optional<double> upper;
  std::optional<double> width;
  double norm_d = 0.0;
  double norm1_z = 0.0;
  std::size_t inner_iters = 0;
  double elapsed = 0.0;
};

using Trajectory = std::vector<TrajectoryPoint>;

// Columns: k, r_k, R_k, norm_d, inner_iters, elapsed_s.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

struct SolveResult {
  Vector x;
  SolveStatus status = SolveStatus::Stalled;
  double objective = 0.0;
  double residual = 0.0;
  std::size_t outer_iterations = 0;
  std::size_t inner_iterations = 0;
  std::size_t affine_projections = 0;
  std::size_t ball_projections = 0;
  std::size_t hoc_calls = 0;
  double wall_time = 0.0;
  double final_gap = 0.0;  // ||z - x||_2 of the last MAP pair, if any
  std::optional<Vector> certificate;  // dual w from a successful HOC
  std::optional<double> duality_gap;  // present iff certificate is
  Trajectory trajectory;
};

/// Raised when a projection backend fails mid-solve. Carries what was
/// computed up to that point.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, Trajectory partial)
      : Error(ErrorCode::SolverFailure, what), partial_(std::move(partial)) {}

  const Trajectory& partial_trajectory() const noexcept { return partial_; }

 private:
  Trajectory partial_;
};

// ---- heuristic optimality check --------------------------------------------

using Support = std::vector<Index>;

// {i : |x_i| > max(tau_abs, tau_rel ||x||_inf)}, ascending.
Support support_of(const Vector& x, double tau_abs, double tau_rel);

// Equal and nonempty.
bool hoc_trigger_policy(const Support& previous, const Support& current);

enum class HocFailure {
  SupportEmpty,
  DualInfeasible,
  PrimalInconsistent,
  GapTooLarge,
  LinearSolverFailed,
};

const char* to_string(HocFailure reason);

struct HocOutcome {
  bool success = false;
  HocFailure reason = HocFailure::SupportEmpty;  // meaningful on failure
  Vector x_hat;
  Vector w_hat;  // set whenever the dual solve ran, even on failure
  double gap = 0.0;
  Support support;
};

HocOutcome hoc_check(const BpInstance& instance, const Vector& x,
                     const SolverOptions& options);

/// Checks a primal/dual pair directly against the problem data, without
/// reusing anything HOC computed.
struct CertificateCheck {
  double primal_residual = 0.0;  // ||A x - b||_2
  double dual_norm = 0.0;        // ||A^T w||_inf
  double relative_gap = 0.0;     // |(||x||_1 - b'w)| / ||x||_1
  bool primal_ok = false;
  bool dual_ok = false;
  bool gap_ok = false;

  bool ok() const noexcept { return primal_ok && dual_ok && gap_ok; }
};

CertificateCheck verify_certificate(const BpInstance& instance,
                                    const Vector& x, const Vector& w,
                                    double tol);

// b'w / ||A^T w||_inf; -infinity when A^T w = 0.
double dual_lower_bound(const BpInstance& instance, const Vector& w);

// ---- solvers ----------------------------------------------------------------

SolveResult bpmap_solve(const BpInstance& instance,
                        const SolverOptions& options);
SolveResult bpmap_bin_solve(const BpInstance& instance,
                            const SolverOptions& options);
SolveResult isal1_solve(const BpInstance& instance,
                        const SolverOptions& options);

enum class SolverKind { BpMap, BpMapBin, Isal1 };

struct SolverSpec {
  SolverKind kind = SolverKind::BpMap;
  bool hoc = false;
};

// bpmap, bpmap-hoc, bpmap-bin, bpmap-hoc-bin, isal1.
std::optional<SolverSpec> parse_solver_name(std::string_view name);
std::vector<std::string> solver_names();

// Dispatches by name; the name decides whether HOC runs.
SolveResult solve(const BpInstance& instance, std::string_view solver_name,
                  SolverOptions options);

}  // namespace l1p
