#include <Eigen/QR>

#include "core/solvers.hpp"

namespace l1p {

HocOutcome hoc_check(const BpInstance& instance, const Vector& x,
                     const SolverOptions& options) {
  if (x.size() != instance.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "HOC: candidate has the wrong length");
  }
  if (instance.b.isZero(0.0)) {
    throw Error(ErrorCode::InvalidArgument, "HOC requires b != 0");
  }
  HocOutcome out;
  out.support = support_of(x, options.hoc_tau_abs, options.hoc_tau_rel);
  if (out.support.empty()) {
    out.reason = HocFailure::SupportEmpty;
    return out;
  }

  const DenseMatrix a_s = instance.a->columns(out.support);
  const Index s = a_s.cols();
  const Index full_rank = std::min(s, a_s.rows());

  Vector signs(s);
  for (Index k = 0; k < s; ++k) signs[k] = x[out.support[k]] > 0 ? 1.0 : -1.0;

  // A_S^T w = sign(x_S), minimum-norm (least squares when |S| > m).
  Eigen::CompleteOrthogonalDecomposition<DenseMatrix> dual(a_s.transpose());
  if (dual.rank() < full_rank) {
    out.reason = HocFailure::LinearSolverFailed;
    return out;
  }
  out.w_hat = dual.solve(signs);
  const double tol = options.hoc_tol;
  if (instance.a->multiply_transposed(out.w_hat).lpNorm<Eigen::Infinity>() >
      1.0 + tol) {
    out.reason = HocFailure::DualInfeasible;
    return out;
  }

  Eigen::CompleteOrthogonalDecomposition<DenseMatrix> primal(a_s);
  if (primal.rank() < full_rank) {
    out.reason = HocFailure::LinearSolverFailed;
    return out;
  }
  const Vector x_s = primal.solve(instance.b);
  if ((a_s * x_s - instance.b).norm() > tol * (1.0 + instance.b.norm())) {
    out.reason = HocFailure::PrimalInconsistent;
    return out;
  }
  out.x_hat = Vector::Zero(instance.cols());
  for (Index k = 0; k < s; ++k) out.x_hat[out.support[k]] = x_s[k];

  const double norm1 = out.x_hat.lpNorm<1>();
  if (norm1 == 0.0) {
    out.reason = HocFailure::PrimalInconsistent;
    return out;
  }
  out.gap = (norm1 - instance.b.dot(out.w_hat)) / norm1;
  if (std::abs(out.gap) > tol) {
    out.reason = HocFailure::GapTooLarge;
    return out;
  }
  out.success = true;
  return out;
}

}  // namespace l1p
