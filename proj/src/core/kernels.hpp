#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "core/error.hpp"

namespace l1p {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;  // column major
using SparseMatrixCsc = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using Index = Eigen::Index;

/// Dense or CSC sparse matrix with validated storage.
///
/// Construction enforces finiteness of all entries; sparse matrices must be
/// compressed with strictly increasing row indices per column and no stored
/// zeros. Immutable afterwards, so a single instance may be shared freely
/// between threads.
class Matrix {
 public:
  explicit Matrix(DenseMatrix dense);
  explicit Matrix(SparseMatrixCsc sparse);

  Index rows() const noexcept;
  Index cols() const noexcept;
  bool is_sparse() const noexcept {
    return std::holds_alternative<SparseMatrixCsc>(storage_);
  }
  std::size_t nonzeros() const noexcept;

  const DenseMatrix& dense() const;
  const SparseMatrixCsc& sparse() const;

  // y = A x
  Vector multiply(const Vector& x) const;
  // y = A^T x
  Vector multiply_transposed(const Vector& y) const;
  // Column i as a dense vector.
  Vector column(Index i) const;
  // A restricted to the given columns, densified.
  DenseMatrix columns(std::span<const Index> index) const;
  DenseMatrix to_dense() const;
  // A A^T, materialised. Only used by the Cholesky backend.
  DenseMatrix gram() const;

 private:
  std::variant<DenseMatrix, SparseMatrixCsc> storage_;
};

// Converts a dense matrix to CSC, dropping exact zeros.
SparseMatrixCsc to_sparse(const DenseMatrix& dense);

Vector matvec(const Matrix& a, const Vector& x);

enum class SpdMode { Cholesky, ConjugateGradient };

enum class SpdStatus { Converged, IterationCap, Breakdown };

struct SpdSolveResult {
  Vector solution;
  SpdStatus status = SpdStatus::Converged;
  std::size_t iterations = 0;
  double residual = 0.0;  // ||A A^T w - rhs||_2

  bool ok() const noexcept { return status == SpdStatus::Converged; }
};

inline constexpr double kDefaultSpdTolerance = 1.49e-8;

/// Solves (A A^T) w = rhs for a full-row-rank A.
///
/// Cholesky mode factors A A^T once at construction and throws
/// NotPositiveDefinite if the factorization fails. CG mode never forms
/// A A^T; it applies A (A^T p) and stops once
/// ||A A^T w - rhs||_2 <= tol * (1 + ||rhs||_2), or after 10*m iterations.
/// solve() is const and allocates its own scratch, so concurrent calls are
/// safe.
class SpdSolver {
 public:
  SpdSolver(std::shared_ptr<const Matrix> a, SpdMode mode,
            double tolerance = kDefaultSpdTolerance);

  static SpdMode default_mode(const Matrix& a) noexcept {
    return a.is_sparse() ? SpdMode::ConjugateGradient : SpdMode::Cholesky;
  }

  SpdSolveResult solve(const Vector& rhs) const;

  SpdMode mode() const noexcept { return mode_; }
  double tolerance() const noexcept { return tolerance_; }
  const Matrix& matrix() const noexcept { return *a_; }
  std::size_t max_cg_iterations() const noexcept {
    return 10 * static_cast<std::size_t>(a_->rows());
  }

 private:
  SpdSolveResult solve_cholesky(const Vector& rhs) const;
  SpdSolveResult solve_cg(const Vector& rhs) const;

  std::shared_ptr<const Matrix> a_;
  SpdMode mode_;
  double tolerance_;
  DenseMatrix gram_;
  Eigen::LLT<DenseMatrix> factor_;
};

SpdSolveResult solve_spd(const SpdSolver& solver, const Vector& rhs);

}  // namespace l1p
