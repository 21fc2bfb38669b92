#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/kernels.hpp"

namespace l1p {

struct InstanceMeta {
  std::string label;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sparsity;
  std::optional<double> dynamic_range;
  std::optional<double> erc_value;
};

/// A basis pursuit instance: minimise ||x||_1 subject to A x = b.
struct BpInstance {
  std::shared_ptr<const Matrix> a;
  Vector b;
  std::optional<Vector> planted;  // a known solution, when generated
  InstanceMeta meta;

  Index rows() const noexcept { return a->rows(); }
  Index cols() const noexcept { return a->cols(); }

  // Throws on inconsistent dimensions, non-finite data, or a planted vector
  // with ||A x* - b|| > 1e-10 (1 + ||b||).
  void validate() const;
};

BpInstance make_instance(Matrix a, Vector b,
                         std::optional<Vector> planted = std::nullopt,
                         InstanceMeta meta = {});

// ---- synthetic generation -------------------------------------------------

enum class Ensemble { Gaussian };

struct GenSpec {
  Index m = 0;
  Index n = 0;
  Index sparsity = 0;
  double dynamic_range = 0.0;  // magnitudes are 10^U[0, d]
  std::uint64_t seed = 0;
  Ensemble ensemble = Ensemble::Gaussian;

  void validate() const;
};

// Unit-norm Gaussian columns, planted s-sparse x* with Rademacher signs,
// b = A x*. Deterministic for a fixed seed.
BpInstance generate(const GenSpec& spec);

// ---- exact recovery condition ---------------------------------------------

struct ErcResult {
  bool holds = false;
  double value = 0.0;  // max over off-support columns of ||A_S^+ a_i||_1
};

// Uses the planted support. Throws RankDeficient if A_S lacks full column
// rank and InvalidArgument if no planted vector is attached.
ErcResult check_erc(const BpInstance& instance);
ErcResult check_erc(const Matrix& a, const std::vector<Index>& support);

// ---- files ----------------------------------------------------------------

// Directory layout: A.mtx, b.mtx, optional xtrue.mtx, meta.json.
void write_instance(const BpInstance& instance,
                    const std::filesystem::path& dir);
BpInstance read_instance(const std::filesystem::path& dir);

// Fixed-format MPS for min 1'x+ + 1'x- s.t. A x+ - A x- = b, x+, x- >= 0.
void export_lp(const BpInstance& instance, const std::filesystem::path& path);

/// Standard-form LP min c'x s.t. A x = b, x >= 0, as read back from MPS.
struct StandardFormLp {
  std::vector<std::string> column_names;
  std::vector<std::string> row_names;
  DenseMatrix a;
  Vector b;
  Vector c;
};

// Reads the subset of MPS that export_lp writes: one N row, E rows,
// COLUMNS, RHS, and default nonnegative bounds.
StandardFormLp read_mps(const std::filesystem::path& path);

// ---- small-instance oracles ------------------------------------------------

struct LpOracleResult {
  double objective = 0.0;
  Vector solution;
  bool tie = false;  // another distinct vertex attains the optimum
};

// Exact basis pursuit optimum by enumerating supports with independent
// columns (n <= 12). Throws Infeasible when A x = b has no solution.
LpOracleResult lp_oracle(const BpInstance& instance);

// Optimum of a standard-form LP by enumerating bases. For desk-scale
// cross-checks of exported LPs. Throws Infeasible if no basic feasible
// solution exists.
double standard_lp_vertex_optimum(const StandardFormLp& lp);

}  // namespace l1p
