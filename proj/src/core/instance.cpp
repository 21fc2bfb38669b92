#include "core/instance.hpp"

#include <string>

namespace l1p {

void BpInstance::validate() const {
  if (!a) throw Error(ErrorCode::InvalidArgument, "instance has no matrix");
  if (b.size() != a->rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "b has length " + std::to_string(b.size()) + ", A has " +
                    std::to_string(a->rows()) + " rows");
  }
  if (!b.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "b has non-finite entries");
  }
  if (planted) {
    if (planted->size() != a->cols()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "planted solution has length " +
                      std::to_string(planted->size()) + ", A has " +
                      std::to_string(a->cols()) + " columns");
    }
    const double residual = (a->multiply(*planted) - b).norm();
    if (residual > 1e-10 * (1.0 + b.norm())) {
      throw Error(ErrorCode::InvalidArgument,
                  "planted solution violates A x = b (residual " +
                      std::to_string(residual) + ")");
    }
  }
}

BpInstance make_instance(Matrix a, Vector b, std::optional<Vector> planted,
                         InstanceMeta meta) {
  BpInstance inst{std::make_shared<const Matrix>(std::move(a)), std::move(b),
                  std::move(planted), std::move(meta)};
  inst.validate();
  return inst;
}

}  // namespace l1p
