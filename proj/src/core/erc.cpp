#include <Eigen/QR>

#include "core/instance.hpp"

namespace l1p {

ErcResult check_erc(const Matrix& a, const std::vector<Index>& support) {
  std::vector<bool> in_support(static_cast<std::size_t>(a.cols()), false);
  for (Index i : support) {
    if (i < 0 || i >= a.cols()) {
      throw Error(ErrorCode::InvalidArgument, "support index out of range");
    }
    in_support[i] = true;
  }
  ErcResult out;
  if (support.empty()) {
    out.holds = true;
    return out;
  }
  const DenseMatrix a_s = a.columns(support);
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(a_s);
  if (qr.rank() < static_cast<Index>(support.size())) {
    throw Error(ErrorCode::RankDeficient,
                "ERC: A_S does not have full column rank");
  }
  for (Index i = 0; i < a.cols(); ++i) {
    if (in_support[i]) continue;
    const Vector coeffs = qr.solve(a.column(i));
    out.value = std::max(out.value, coeffs.lpNorm<1>());
  }
  out.holds = out.value < 1.0;
  return out;
}

ErcResult check_erc(const BpInstance& instance) {
  if (!instance.planted) {
    throw Error(ErrorCode::InvalidArgument,
                "ERC needs a planted solution to define the support");
  }
  std::vector<Index> support;
  for (Index i = 0; i < instance.planted->size(); ++i) {
    if ((*instance.planted)[i] != 0.0) support.push_back(i);
  }
  return check_erc(*instance.a, support);
}

}  // namespace l1p
