#include "core/error.hpp"

namespace l1p {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::NotPositiveDefinite: return "not positive definite";
    case ErrorCode::SolverFailure: return "solver failure";
    case ErrorCode::RankDeficient: return "rank deficient";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Infeasible: return "infeasible";
  }
  return "unknown error";
}

}  // namespace l1p
