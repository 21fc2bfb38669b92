#include "core/solver_common.hpp"

#include <cmath>
#include <iomanip>
#include <limits>

namespace l1p {

void SolverOptions::validate() const {
  map.validate();
  if (max_outer < 1) {
    throw Error(ErrorCode::InvalidArgument, "outer iteration cap must be >= 1");
  }
  if (!(time_limit >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "time limit must be nonnegative");
  }
  if (!(bin_alpha > 0.0 && bin_alpha < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  }
  if (!(hoc_tau_abs > 0.0) || !(hoc_tau_rel > 0.0) || !(hoc_tol > 0.0) ||
      !(bin_gap_tol > 0.0) || !(isal1_step_floor > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  }
  if (isal1_patience < 1) {
    throw Error(ErrorCode::InvalidArgument, "ISAL1 patience must be >= 1");
  }
  if (!(spd_tol > 0.0 && spd_tol < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "SPD tolerance must lie in (0, 1)");
  }
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::HocOptimal: return "HocOptimal";
    case SolveStatus::Stalled: return "Stalled";
    case SolveStatus::IterLimit: return "IterLimit";
    case SolveStatus::TimeLimit: return "TimeLimit";
  }
  return "?";
}

std::optional<SolveStatus> parse_solve_status(std::string_view text) {
  for (auto s : {SolveStatus::Optimal, SolveStatus::HocOptimal,
                 SolveStatus::Stalled, SolveStatus::IterLimit,
                 SolveStatus::TimeLimit}) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

const char* to_string(HocFailure reason) {
  switch (reason) {
    case HocFailure::SupportEmpty: return "support-empty";
    case HocFailure::DualInfeasible: return "dual-infeasible";
    case HocFailure::PrimalInconsistent: return "primal-inconsistent";
    case HocFailure::GapTooLarge: return "gap-too-large";
    case HocFailure::LinearSolverFailed: return "linear-solver-failed";
  }
  return "?";
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "k,r_k,R_k,norm_d,inner_iters,elapsed_s\n";
  out << std::setprecision(9);
  for (const auto& p : trajectory) {
    out << p.k << ',' << p.r << ',';
    if (p.upper) out << *p.upper;
    out << ',' << p.norm_d << ',' << p.inner_iters << ',' << p.elapsed
        << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

Support support_of(const Vector& x, double tau_abs, double tau_rel) {
  Support s;
  if (x.size() == 0) return s;
  const double threshold =
      std::max(tau_abs, tau_rel * x.lpNorm<Eigen::Infinity>());
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > threshold) s.push_back(i);
  }
  return s;
}

bool hoc_trigger_policy(const Support& previous, const Support& current) {
  return !current.empty() && previous == current;
}

double dual_lower_bound(const BpInstance& instance, const Vector& w) {
  const double scale =
      instance.a->multiply_transposed(w).lpNorm<Eigen::Infinity>();
  if (scale == 0.0) return -std::numeric_limits<double>::infinity();
  return instance.b.dot(w) / scale;
}

CertificateCheck verify_certificate(const BpInstance& instance,
                                    const Vector& x, const Vector& w,
                                    double tol) {
  CertificateCheck c;
  c.primal_residual = (instance.a->multiply(x) - instance.b).norm();
  c.dual_norm = instance.a->multiply_transposed(w).lpNorm<Eigen::Infinity>();
  const double norm1 = x.lpNorm<1>();
  c.relative_gap = norm1 > 0.0
                       ? std::abs(norm1 - instance.b.dot(w)) / norm1
                       : std::numeric_limits<double>::infinity();
  c.primal_ok = c.primal_residual <= tol * (1.0 + instance.b.norm());
  c.dual_ok = c.dual_norm <= 1.0 + tol;
  c.gap_ok = c.relative_gap <= tol;
  return c;
}

namespace detail {

AffineProjector make_projector(const BpInstance& instance,
                               const SolverOptions& options) {
  const SpdMode mode =
      options.spd_mode.value_or(SpdSolver::default_mode(*instance.a));
  return AffineProjector(instance.a, instance.b, mode, options.spd_tol);
}

void finish(SolveResult& result, const BpInstance& instance, Vector x,
            SolveStatus status, const SolveClock& clock) {
  result.x = std::move(x);
  result.status = status;
  result.objective = result.x.lpNorm<1>();
  result.residual = (instance.a->multiply(result.x) - instance.b).norm();
  result.wall_time = clock.elapsed();
}

std::optional<Vector> try_hoc(const BpInstance& instance, const Vector& x,
                              const SolverOptions& options,
                              SolveResult& result, HocOutcome* outcome) {
  ++result.hoc_calls;
  HocOutcome hoc = hoc_check(instance, x, options);
  std::optional<Vector> accepted;
  if (hoc.success &&
      verify_certificate(instance, hoc.x_hat, hoc.w_hat, options.hoc_tol)
          .ok()) {
    result.certificate = hoc.w_hat;
    result.duality_gap = hoc.gap;
    accepted = hoc.x_hat;
  }
  if (outcome) *outcome = std::move(hoc);
  return accepted;
}

}  // namespace detail
}  // namespace l1p
