#pragma once

#include <filesystem>

#include "core/kernels.hpp"

// MatrixMarket "matrix" files, real/integer field, general symmetry.
namespace l1p::mm {

// Coordinate files become sparse matrices, array files dense ones. Duplicate
// coordinate entries are rejected with both line numbers. Explicit zeros in
// coordinate files are dropped.
Matrix read_matrix(const std::filesystem::path& path);

// A single-column matrix in either layout.
Vector read_vector(const std::filesystem::path& path);

// Values are written with 17 significant digits so doubles round-trip.
void write_array(const DenseMatrix& a, const std::filesystem::path& path);
void write_coordinate(const SparseMatrixCsc& a,
                      const std::filesystem::path& path);
void write_vector(const Vector& v, const std::filesystem::path& path);
void write_matrix(const Matrix& a, const std::filesystem::path& path);

}  // namespace l1p::mm
