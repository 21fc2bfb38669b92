#include "core/kernels.hpp"

#include <cmath>
#include <string>

namespace l1p {

namespace {

void require_finite(const double* data, std::size_t count, const char* what) {
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::isfinite(data[i])) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string(what) + ": non-finite entry at position " +
                      std::to_string(i));
    }
  }
}

void validate_csc(const SparseMatrixCsc& s) {
  if (!s.isCompressed()) {
    throw Error(ErrorCode::InvalidArgument, "sparse matrix must be compressed");
  }
  const int* outer = s.outerIndexPtr();
  const int* inner = s.innerIndexPtr();
  const double* values = s.valuePtr();
  if (outer[0] != 0) {
    throw Error(ErrorCode::InvalidArgument, "column pointers must start at 0");
  }
  for (Index j = 0; j < s.cols(); ++j) {
    if (outer[j + 1] < outer[j]) {
      throw Error(ErrorCode::InvalidArgument,
                  "column pointers decrease at column " + std::to_string(j));
    }
    for (int p = outer[j]; p < outer[j + 1]; ++p) {
      if (inner[p] < 0 || inner[p] >= s.rows()) {
        throw Error(ErrorCode::InvalidArgument,
                    "row index out of range in column " + std::to_string(j));
      }
      if (p > outer[j] && inner[p] <= inner[p - 1]) {
        throw Error(ErrorCode::InvalidArgument,
                    "row indices not strictly increasing in column " +
                        std::to_string(j));
      }
      if (values[p] == 0.0) {
        throw Error(ErrorCode::InvalidArgument,
                    "explicit zero stored in column " + std::to_string(j));
      }
    }
  }
  require_finite(values, static_cast<std::size_t>(s.nonZeros()),
                 "sparse matrix");
}

}  // namespace

Matrix::Matrix(DenseMatrix dense) : storage_(std::move(dense)) {
  const auto& d = std::get<DenseMatrix>(storage_);
  require_finite(d.data(), static_cast<std::size_t>(d.size()), "dense matrix");
}

Matrix::Matrix(SparseMatrixCsc sparse) : storage_(std::move(sparse)) {
  validate_csc(std::get<SparseMatrixCsc>(storage_));
}

Index Matrix::rows() const noexcept {
  return std::visit([](const auto& m) { return Index(m.rows()); }, storage_);
}

Index Matrix::cols() const noexcept {
  return std::visit([](const auto& m) { return Index(m.cols()); }, storage_);
}

std::size_t Matrix::nonzeros() const noexcept {
  if (is_sparse()) return static_cast<std::size_t>(sparse().nonZeros());
  return static_cast<std::size_t>(dense().size());
}

const DenseMatrix& Matrix::dense() const {
  if (const auto* d = std::get_if<DenseMatrix>(&storage_)) return *d;
  throw Error(ErrorCode::InvalidArgument, "matrix is not dense");
}

const SparseMatrixCsc& Matrix::sparse() const {
  if (const auto* s = std::get_if<SparseMatrixCsc>(&storage_)) return *s;
  throw Error(ErrorCode::InvalidArgument, "matrix is not sparse");
}

Vector Matrix::multiply(const Vector& x) const {
  if (x.size() != cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "matvec: x has length " + std::to_string(x.size()) +
                    ", matrix has " + std::to_string(cols()) + " columns");
  }
  return std::visit([&](const auto& m) -> Vector { return m * x; }, storage_);
}

Vector Matrix::multiply_transposed(const Vector& y) const {
  if (y.size() != rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "transposed matvec: y has length " + std::to_string(y.size()) +
                    ", matrix has " + std::to_string(rows()) + " rows");
  }
  return std::visit(
      [&](const auto& m) -> Vector { return m.transpose() * y; }, storage_);
}

Vector Matrix::column(Index i) const {
  if (i < 0 || i >= cols()) {
    throw Error(ErrorCode::InvalidArgument,
                "column index " + std::to_string(i) + " out of range");
  }
  if (is_sparse()) return Vector(sparse().col(i));
  return dense().col(i);
}

DenseMatrix Matrix::columns(std::span<const Index> index) const {
  DenseMatrix out(rows(), static_cast<Index>(index.size()));
  for (std::size_t k = 0; k < index.size(); ++k) {
    out.col(static_cast<Index>(k)) = column(index[k]);
  }
  return out;
}

DenseMatrix Matrix::to_dense() const {
  if (is_sparse()) return DenseMatrix(sparse());
  return dense();
}

DenseMatrix Matrix::gram() const {
  if (is_sparse()) {
    const auto& s = sparse();
    SparseMatrixCsc g = s * SparseMatrixCsc(s.transpose());
    return DenseMatrix(g);
  }
  const auto& d = dense();
  DenseMatrix g = DenseMatrix::Zero(d.rows(), d.rows());
  g.selfadjointView<Eigen::Lower>().rankUpdate(d);
  return g.selfadjointView<Eigen::Lower>();
}

SparseMatrixCsc to_sparse(const DenseMatrix& dense) {
  SparseMatrixCsc s = dense.sparseView(0.0, 0.0);
  s.makeCompressed();
  return s;
}

Vector matvec(const Matrix& a, const Vector& x) { return a.multiply(x); }

SpdSolver::SpdSolver(std::shared_ptr<const Matrix> a, SpdMode mode,
                     double tolerance)
    : a_(std::move(a)), mode_(mode), tolerance_(tolerance) {
  if (!a_) throw Error(ErrorCode::InvalidArgument, "null matrix");
  if (!(tolerance_ > 0.0 && tolerance_ < 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "SPD tolerance must lie in (0, 1)");
  }
  if (mode_ == SpdMode::Cholesky) {
    gram_ = a_->gram();
    factor_.compute(gram_);
    if (factor_.info() != Eigen::Success) {
      throw Error(ErrorCode::NotPositiveDefinite,
                  "Cholesky of A A^T failed; A must have full row rank");
    }
    // LLT only reports failure on non-positive pivots; catch near-singular
    // factors too.
    const auto diag = factor_.matrixLLT().diagonal();
    if (diag.size() > 0 &&
        diag.minCoeff() <= 1e-7 * diag.maxCoeff()) {
      throw Error(ErrorCode::NotPositiveDefinite,
                  "A A^T is numerically singular; A must have full row rank");
    }
  }
}

SpdSolveResult SpdSolver::solve(const Vector& rhs) const {
  if (rhs.size() != a_->rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "SPD solve: rhs has length " + std::to_string(rhs.size()) +
                    ", expected " + std::to_string(a_->rows()));
  }
  return mode_ == SpdMode::Cholesky ? solve_cholesky(rhs) : solve_cg(rhs);
}

SpdSolveResult SpdSolver::solve_cholesky(const Vector& rhs) const {
  SpdSolveResult out;
  const double bound = tolerance_ * (1.0 + rhs.norm());
  out.solution = factor_.solve(rhs);
  Vector r = rhs - gram_ * out.solution;
  out.residual = r.norm();
  // Two refinement sweeps at most; a well-conditioned Gram never needs one.
  for (int sweep = 0; sweep < 2 && out.residual > bound; ++sweep) {
    out.solution += factor_.solve(r);
    r = rhs - gram_ * out.solution;
    out.residual = r.norm();
    ++out.iterations;
  }
  if (out.residual > bound) out.status = SpdStatus::IterationCap;
  return out;
}

SpdSolveResult SpdSolver::solve_cg(const Vector& rhs) const {
  SpdSolveResult out;
  const Index m = a_->rows();
  const double bound = tolerance_ * (1.0 + rhs.norm());
  out.solution = Vector::Zero(m);
  Vector r = rhs;
  double rr = r.squaredNorm();
  out.residual = std::sqrt(rr);
  if (out.residual <= bound) return out;

  Vector p = r;
  Vector q(m);
  const std::size_t cap = max_cg_iterations();
  while (out.iterations < cap) {
    q = a_->multiply(a_->multiply_transposed(p));
    const double curvature = p.dot(q);
    if (!(curvature > 0.0)) {
      out.status = SpdStatus::Breakdown;
      return out;
    }
    const double step = rr / curvature;
    out.solution += step * p;
    r -= step * q;
    ++out.iterations;
    const double rr_next = r.squaredNorm();
    out.residual = std::sqrt(rr_next);
    if (out.residual <= bound) {
      // The recursive residual drifts; confirm against the true one.
      const Vector true_r =
          rhs - a_->multiply(a_->multiply_transposed(out.solution));
      out.residual = true_r.norm();
      if (out.residual <= bound) return out;
      r = true_r;
      rr = r.squaredNorm();
      p = r;
      continue;
    }
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  out.status = SpdStatus::IterationCap;
  return out;
}

SpdSolveResult solve_spd(const SpdSolver& solver, const Vector& rhs) {
  return solver.solve(rhs);
}

}  // namespace l1p
