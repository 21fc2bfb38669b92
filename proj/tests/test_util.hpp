#pragma once

#include <filesystem>
#include <random>
#include <string>

#include <unistd.h>

#include "core/instance.hpp"
#include "core/kernels.hpp"

namespace l1p::test {

inline Vector randn(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

inline DenseMatrix randn(std::mt19937_64& rng, Index m, Index n) {
  std::normal_distribution<double> g;
  DenseMatrix a(m, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i) a(i, j) = g(rng);
  return a;
}

inline BpInstance dense_instance(DenseMatrix a, Vector b) {
  return make_instance(Matrix(std::move(a)), std::move(b));
}

// A = [[1, 2]], b = (2): optimum 1 at (0, 1).
inline BpInstance line_instance() {
  DenseMatrix a(1, 2);
  a << 1, 2;
  Vector b(1);
  b << 2;
  return dense_instance(a, b);
}

inline BpInstance gaussian(Index m, Index n, Index s, std::uint64_t seed,
                           double d = 1.0) {
  GenSpec spec;
  spec.m = m;
  spec.n = n;
  spec.sparsity = s;
  spec.dynamic_range = d;
  spec.seed = seed;
  return generate(spec);
}

inline double inf_dist(const Vector& a, const Vector& b) {
  return (a - b).lpNorm<Eigen::Infinity>();
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("l1p_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace l1p::test
