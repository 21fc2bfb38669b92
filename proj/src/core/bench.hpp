#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "core/solvers.hpp"

namespace l1p {

// Status column for runs that threw instead of returning.
inline constexpr const char* kErrorStatus = "Error";

struct BenchRecord {
  std::string instance;
  std::string solver;
  std::string status;  // a SolveStatus name or kErrorStatus
  double time_s = 0.0;
  double objective = 0.0;
  double residual = 0.0;
  std::size_t outer_iters = 0;
  std::size_t inner_iters = 0;

  bool solved() const;
};

struct BenchOptions {
  SolverOptions solver;
  std::size_t workers = 1;  // further capped by L1PURSUIT_THREADS
  // Records are appended here as cells finish, in completion order.
  std::optional<std::filesystem::path> stream_path;
};

// Effective worker count: min(requested, L1PURSUIT_THREADS if set, cells),
// at least 1.
std::size_t effective_workers(std::size_t requested, std::size_t cells);

// One record per (instance, solver), sorted by instance label then solver.
// Unsolved runs report time_s = time limit.
std::vector<BenchRecord> run_suite(const std::vector<BpInstance>& instances,
                                   const std::vector<std::string>& solvers,
                                   const BenchOptions& options);

void write_records_csv(const std::vector<BenchRecord>& records,
                       std::ostream& out);
void write_records_csv(const std::vector<BenchRecord>& records,
                       const std::filesystem::path& path);
std::vector<BenchRecord> read_records_csv(const std::filesystem::path& path);

struct BenchManifest {
  std::vector<std::filesystem::path> instances;  // resolved against the file
  std::vector<std::string> solvers;
  std::optional<double> time_limit;
};

// JSON object {"instances": [dirs], "solvers": [names], "time_limit": s}.
// Rejects empty lists, unknown solvers and missing instance directories
// (all of them, in one message).
BenchManifest load_manifest(const std::filesystem::path& path);

// ---- performance profiles ----------------------------------------------------

struct ProfileStep {
  double ratio = 1.0;  // tau, linear scale
  double rho = 0.0;
};

struct ProfileCurve {
  std::string solver;
  std::vector<ProfileStep> steps;  // ratio ascending, first ratio is 1
};

struct PerfProfile {
  std::vector<std::string> solvers;
  std::size_t problems = 0;
  std::vector<ProfileCurve> curves;
};

// Times within 1e-9 relative of the per-problem best count as ratio 1;
// unsolved runs count as +inf. Throws InvalidArgument listing missing
// (instance, solver) cells when the grid is incomplete.
PerfProfile performance_profile(const std::vector<BenchRecord>& records);

// rho_s(tau) for a linear-scale tau.
double profile_value(const ProfileCurve& curve, double tau);

// Columns: solver, tau (log2), rho.
void write_profile_csv(const PerfProfile& profile, std::ostream& out);
void write_profile_csv(const PerfProfile& profile,
                       const std::filesystem::path& path);
void write_profile_svg(const PerfProfile& profile,
                       const std::filesystem::path& path);

}  // namespace l1p
