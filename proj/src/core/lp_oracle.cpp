#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>
#include <Eigen/QR>

#include "core/instance.hpp"

namespace l1p {

namespace {

constexpr double kTieTol = 1e-9;

// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(Index n, Index k, F&& f) {
  std::vector<Index> s(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) s[i] = i;
  while (true) {
    f(s);
    Index i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) return;
    ++s[i];
    for (Index j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

DenseMatrix gather(const DenseMatrix& a, const std::vector<Index>& s) {
  DenseMatrix out(a.rows(), static_cast<Index>(s.size()));
  for (std::size_t j = 0; j < s.size(); ++j) out.col(j) = a.col(s[j]);
  return out;
}

bool within_tie(double a, double b) {
  return std::abs(a - b) <= kTieTol * std::max(1.0, std::abs(b));
}

}  // namespace

LpOracleResult lp_oracle(const BpInstance& instance) {
  instance.validate();
  const Index m = instance.rows();
  const Index n = instance.cols();
  if (n > 12) {
    throw Error(ErrorCode::InvalidArgument,
                "lp_oracle enumerates supports and is limited to n <= 12");
  }
  const Vector& b = instance.b;
  const double b_norm = b.norm();
  LpOracleResult best;
  best.solution = Vector::Zero(n);
  if (b_norm == 0.0) return best;

  const DenseMatrix a = instance.a->to_dense();
  const double consistency_tol = 1e-9 * (1.0 + b_norm);
  bool found = false;
  std::vector<Index> best_support;
  std::vector<Vector> optimal_vectors;

  for (Index k = 1; k <= std::min(m, n); ++k) {
    for_each_subset(n, k, [&](const std::vector<Index>& s) {
      const DenseMatrix as = gather(a, s);
      Eigen::ColPivHouseholderQR<DenseMatrix> qr(as);
      if (qr.rank() < k) return;
      const Vector xs = qr.solve(b);
      if ((as * xs - b).norm() > consistency_tol) return;
      Vector x = Vector::Zero(n);
      for (Index j = 0; j < k; ++j) x[s[j]] = xs[j];
      const double obj = x.lpNorm<1>();

      if (found && within_tie(obj, best.objective)) {
        optimal_vectors.push_back(x);
        if (std::lexicographical_compare(s.begin(), s.end(),
                                         best_support.begin(),
                                         best_support.end())) {
          best_support = s;
          best.solution = x;
        }
        return;
      }
      if (!found || obj < best.objective) {
        found = true;
        best.objective = obj;
        best.solution = x;
        best_support = s;
        optimal_vectors.assign(1, x);
      }
    });
  }
  if (!found) throw Error(ErrorCode::Infeasible, "A x = b has no solution");

  for (const Vector& v : optimal_vectors) {
    if ((v - best.solution).lpNorm<Eigen::Infinity>() >
        kTieTol * std::max(1.0, best.solution.lpNorm<Eigen::Infinity>())) {
      best.tie = true;
      break;
    }
  }
  return best;
}

double standard_lp_vertex_optimum(const StandardFormLp& lp) {
  const Index m = lp.a.rows();
  const Index n = lp.a.cols();
  if (lp.b.size() != m || lp.c.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "inconsistent LP dimensions");
  }
  if (n > 32) {
    throw Error(ErrorCode::InvalidArgument,
                "basis enumeration is limited to 32 columns");
  }
  // With c >= 0 the LP is bounded, so some vertex is optimal.
  if (n > 0 && lp.c.minCoeff() < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "negative costs are not supported");
  }
  const double b_norm = lp.b.norm();
  if (b_norm == 0.0) return 0.0;

  Eigen::ColPivHouseholderQR<DenseMatrix> full(lp.a);
  const Index rank = full.rank();
  const double feas_tol = 1e-9 * (1.0 + b_norm);
  double best = std::numeric_limits<double>::infinity();

  for_each_subset(n, rank, [&](const std::vector<Index>& s) {
    const DenseMatrix as = gather(lp.a, s);
    Eigen::ColPivHouseholderQR<DenseMatrix> qr(as);
    if (qr.rank() < rank) return;
    const Vector xs = qr.solve(lp.b);
    if ((as * xs - lp.b).norm() > feas_tol) return;
    const double neg_tol = 1e-12 * std::max(1.0, xs.lpNorm<Eigen::Infinity>());
    if ((xs.array() < -neg_tol).any()) return;
    double obj = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) obj += lp.c[s[j]] * std::max(0.0, xs[j]);
    best = std::min(best, obj);
  });
  if (!std::isfinite(best)) {
    throw Error(ErrorCode::Infeasible, "LP has no basic feasible solution");
  }
  return best;
}

}  // namespace l1p
