#pragma once

#include <stdexcept>
#include <string>

namespace l1p {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotPositiveDefinite,
  SolverFailure,
  RankDeficient,
  Io,
  Parse,
  Infeasible,
};

const char* to_string(ErrorCode code);

// Every failure raised by the core carries a code so the C layer can map it
// without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace l1p
