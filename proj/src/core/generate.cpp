#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "core/instance.hpp"

namespace l1p {

void GenSpec::validate() const {
  if (m < 1 || n < 1) {
    throw Error(ErrorCode::InvalidArgument, "m and n must be positive");
  }
  if (sparsity < 0 || sparsity > m || m > n) {
    throw Error(ErrorCode::InvalidArgument,
                "generator requires s <= m <= n (got s=" +
                    std::to_string(sparsity) + ", m=" + std::to_string(m) +
                    ", n=" + std::to_string(n) + ")");
  }
  if (!(dynamic_range >= 0.0) || !std::isfinite(dynamic_range)) {
    throw Error(ErrorCode::InvalidArgument,
                "dynamic range exponent must be finite and >= 0");
  }
}

BpInstance generate(const GenSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  DenseMatrix a(spec.m, spec.n);
  for (Index j = 0; j < spec.n; ++j) {
    for (Index i = 0; i < spec.m; ++i) a(i, j) = normal(rng);
  }
  for (Index j = 0; j < spec.n; ++j) a.col(j) /= a.col(j).norm();

  // Partial Fisher-Yates: the first s slots are a uniform draw without
  // replacement.
  std::vector<Index> index(static_cast<std::size_t>(spec.n));
  std::iota(index.begin(), index.end(), Index{0});
  for (Index k = 0; k < spec.sparsity; ++k) {
    std::uniform_int_distribution<Index> pick(k, spec.n - 1);
    std::swap(index[k], index[pick(rng)]);
  }

  std::uniform_real_distribution<double> exponent(0.0, spec.dynamic_range);
  std::bernoulli_distribution coin(0.5);
  Vector planted = Vector::Zero(spec.n);
  for (Index k = 0; k < spec.sparsity; ++k) {
    const double e = spec.dynamic_range > 0.0 ? exponent(rng) : 0.0;
    const double magnitude = std::pow(10.0, e);
    planted[index[k]] = coin(rng) ? magnitude : -magnitude;
  }

  Vector b = a * planted;
  InstanceMeta meta;
  meta.label = "gauss_m" + std::to_string(spec.m) + "_n" +
               std::to_string(spec.n) + "_s" + std::to_string(spec.sparsity) +
               "_seed" + std::to_string(spec.seed);
  meta.seed = spec.seed;
  meta.sparsity = static_cast<std::size_t>(spec.sparsity);
  meta.dynamic_range = spec.dynamic_range;
  return make_instance(Matrix(std::move(a)), std::move(b), std::move(planted),
                       std::move(meta));
}

}  // namespace l1p
