#include "core/solvers.hpp"

namespace l1p {

std::optional<SolverSpec> parse_solver_name(std::string_view name) {
  if (name == "bpmap") return SolverSpec{SolverKind::BpMap, false};
  if (name == "bpmap-hoc") return SolverSpec{SolverKind::BpMap, true};
  if (name == "bpmap-bin") return SolverSpec{SolverKind::BpMapBin, false};
  if (name == "bpmap-hoc-bin") return SolverSpec{SolverKind::BpMapBin, true};
  if (name == "isal1") return SolverSpec{SolverKind::Isal1, true};
  return std::nullopt;
}

std::vector<std::string> solver_names() {
  return {"bpmap", "bpmap-hoc", "bpmap-bin", "bpmap-hoc-bin", "isal1"};
}

SolveResult solve(const BpInstance& instance, std::string_view solver_name,
                  SolverOptions options) {
  const auto spec = parse_solver_name(solver_name);
  if (!spec) {
    throw Error(ErrorCode::InvalidArgument,
                "unknown solver '" + std::string(solver_name) + "'");
  }
  options.hoc = spec->hoc;
  switch (spec->kind) {
    case SolverKind::BpMap: return bpmap_solve(instance, options);
    case SolverKind::BpMapBin: return bpmap_bin_solve(instance, options);
    case SolverKind::Isal1: return isal1_solve(instance, options);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown solver kind");
}

}  // namespace l1p
