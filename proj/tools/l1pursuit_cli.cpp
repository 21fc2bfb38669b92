// Command-line front end over the C API.
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "l1pursuit/l1pursuit.h"

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kNotSolved = 1;  // solve without Optimal/HocOptimal, check failure
constexpr int kUsage = 2;
constexpr int kIo = 3;         // unreadable or malformed files
constexpr int kFailure = 4;    // any other library error

int report(l1p_error e) {
  std::fprintf(stderr, "error (%s): %s\n", l1p_error_name(e), l1p_last_error());
  return (e == L1P_ERR_IO || e == L1P_ERR_PARSE ||
          e == L1P_ERR_DIMENSION_MISMATCH)
             ? kIo
             : (e == L1P_ERR_INVALID_ARGUMENT ? kUsage : kFailure);
}

struct Handle {
  l1p_instance* inst = nullptr;
  ~Handle() { l1p_instance_free(inst); }
};

struct ResultHandle {
  l1p_result* res = nullptr;
  ~ResultHandle() { l1p_result_free(res); }
};

void add_solver_flags(CLI::App* cmd, l1p_options& o, std::string& spd) {
  cmd->add_option("--feas-tol", o.feas_tol, "MAP intersection tolerance")
      ->capture_default_str();
  cmd->add_option("--stall-tol", o.stall_tol, "MAP stall tolerance")
      ->capture_default_str();
  cmd->add_option("--max-inner", o.max_inner, "MAP sweeps per call")
      ->capture_default_str();
  cmd->add_option("--max-outer", o.max_outer, "outer iterations")
      ->capture_default_str();
  cmd->add_option("--time-limit", o.time_limit, "seconds per solve")
      ->capture_default_str();
  cmd->add_option("--alpha", o.bin_alpha, "binary search weight")
      ->capture_default_str();
  cmd->add_option("--bin-gap-tol", o.bin_gap_tol, "bracket width tolerance")
      ->capture_default_str();
  cmd->add_option("--hoc-tol", o.hoc_tol, "HOC certificate tolerance")
      ->capture_default_str();
  cmd->add_option("--hoc-tau-abs", o.hoc_tau_abs, "support threshold")
      ->capture_default_str();
  cmd->add_option("--hoc-tau-rel", o.hoc_tau_rel,
                  "support threshold relative to ||x||_inf")
      ->capture_default_str();
  cmd->add_option("--isal1-patience", o.isal1_patience,
                  "non-improving steps before halving the step")
      ->capture_default_str();
  cmd->add_option("--spd", spd, "P_M backend")
      ->check(CLI::IsMember({"auto", "cholesky", "cg"}))
      ->capture_default_str();
}

int apply_spd(const std::string& spd, l1p_options& o) {
  static const std::map<std::string, int> modes = {
      {"auto", L1P_SPD_AUTO}, {"cholesky", L1P_SPD_CHOLESKY}, {"cg", L1P_SPD_CG}};
  o.spd_mode = modes.at(spd);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Basis pursuit by alternating projections"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(l1p_version()));

  std::vector<std::string> solver_list;
  for (size_t i = 0; i < l1p_solver_count(); ++i) solver_list.push_back(l1p_solver_name(i));

  l1p_options opts;
  l1p_options_default(&opts);
  std::string spd = "auto";
  bool verbose = false;

  // generate
  auto* gen = app.add_subcommand("generate", "write a synthetic Gaussian instance");
  size_t g_m = 0, g_n = 0, g_s = 0;
  double g_d = 1.0;
  uint64_t g_seed = 0;
  std::string g_out;
  gen->add_option("--m", g_m, "rows")->required();
  gen->add_option("--n", g_n, "columns")->required();
  gen->add_option("--s", g_s, "planted sparsity")->required();
  gen->add_option("--dynrange", g_d, "magnitudes are 10^U[0,d]")->capture_default_str();
  gen->add_option("--seed", g_seed, "random seed")->capture_default_str();
  gen->add_option("--out", g_out, "instance directory (default: the label)");

  // solve
  auto* sol = app.add_subcommand("solve", "solve an instance");
  std::string s_inst, s_solver = "bpmap-hoc-bin", s_traj = "trajectory.csv", s_x;
  sol->add_option("instance", s_inst, "instance directory")
      ->required()->check(CLI::ExistingDirectory);
  sol->add_option("--solver", s_solver, "solver name")
      ->check(CLI::IsMember(solver_list))->capture_default_str();
  sol->add_option("--trajectory", s_traj, "trajectory CSV path ('' to skip)")
      ->capture_default_str();
  sol->add_option("--solution", s_x, "write x as a MatrixMarket vector");
  sol->add_flag("--verbose,-v", verbose, "print the outer iteration log");
  add_solver_flags(sol, opts, spd);

  // check
  auto* chk = app.add_subcommand("check", "run the optimality check on a solution");
  std::string c_inst, c_x;
  chk->add_option("instance", c_inst, "instance directory")
      ->required()->check(CLI::ExistingDirectory);
  chk->add_option("solution", c_x, "MatrixMarket vector")
      ->required()->check(CLI::ExistingFile);
  chk->add_option("--hoc-tol", opts.hoc_tol, "certificate tolerance")->capture_default_str();
  chk->add_option("--hoc-tau-abs", opts.hoc_tau_abs, "support threshold")->capture_default_str();
  chk->add_option("--hoc-tau-rel", opts.hoc_tau_rel, "relative support threshold")
      ->capture_default_str();

  // export-lp
  auto* exp = app.add_subcommand("export-lp", "write the LP reformulation as fixed MPS");
  std::string e_inst, e_out;
  exp->add_option("instance", e_inst, "instance directory")
      ->required()->check(CLI::ExistingDirectory);
  exp->add_option("output", e_out, "MPS file")->required();

  // bench
  auto* ben = app.add_subcommand("bench", "run a benchmark manifest");
  std::string b_manifest, b_out = "bench_out";
  size_t b_workers = 1;
  ben->add_option("manifest", b_manifest, "JSON manifest")
      ->required()->check(CLI::ExistingFile);
  ben->add_option("--out", b_out, "output directory")->capture_default_str();
  ben->add_option("--workers", b_workers, "parallel cells (capped by L1PURSUIT_THREADS)")
      ->check(CLI::PositiveNumber)->capture_default_str();
  add_solver_flags(ben, opts, spd);

  // profile
  auto* pro = app.add_subcommand("profile", "performance profile from records.csv");
  std::string p_records, p_out = ".";
  pro->add_option("records", p_records, "records.csv")->required()->check(CLI::ExistingFile);
  pro->add_option("--out", p_out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  apply_spd(spd, opts);

  if (*gen) {
    if (g_s > g_m || g_m > g_n) {
      std::fprintf(stderr, "usage error: need s <= m <= n (got s=%zu m=%zu n=%zu)\n",
                   g_s, g_m, g_n);
      return kUsage;
    }
    Handle h;
    if (auto e = l1p_instance_generate(g_m, g_n, g_s, g_d, g_seed, &h.inst)) return report(e);
    int holds = 0;
    double erc = 0.0;
    const bool have_erc = l1p_instance_check_erc(h.inst, &holds, &erc) == L1P_OK;
    if (g_out.empty()) g_out = l1p_instance_label(h.inst);
    if (auto e = l1p_instance_write(h.inst, g_out.c_str())) return report(e);
    std::printf("instance  %s\n", g_out.c_str());
    if (have_erc) {
      std::printf("erc       %.9g (%s)\n", erc, holds ? "holds" : "fails");
    } else {
      std::printf("erc       unavailable: %s\n", l1p_last_error());
    }
    return kOk;
  }

  if (*sol) {
    Handle h;
    if (auto e = l1p_instance_read(s_inst.c_str(), &h.inst)) return report(e);
    ResultHandle r;
    if (auto e = l1p_solve(h.inst, s_solver.c_str(), &opts, &r.res)) return report(e);
    const l1p_status st = l1p_result_status(r.res);
    if (verbose) {
      std::fprintf(stderr, "%8s %16s %16s %12s %10s\n", "k", "r_k", "R_k", "norm_d", "inner");
      for (size_t i = 0; i < l1p_result_trajectory_length(r.res); ++i) {
        l1p_trajectory_point p;
        l1p_result_trajectory_point(r.res, i, &p);
        std::fprintf(stderr, "%8llu %16.9g %16.9g %12.4g %10llu\n",
                     static_cast<unsigned long long>(p.k), p.r, p.upper, p.norm_d,
                     static_cast<unsigned long long>(p.inner_iters));
      }
    }
    std::printf("solver       %s\n", s_solver.c_str());
    std::printf("status       %s\n", l1p_status_name(st));
    std::printf("objective    %.9g\n", l1p_result_objective(r.res));
    std::printf("residual     %.9g\n", l1p_result_residual(r.res));
    std::printf("outer_iters  %llu\n",
                static_cast<unsigned long long>(l1p_result_outer_iterations(r.res)));
    std::printf("inner_iters  %llu\n",
                static_cast<unsigned long long>(l1p_result_inner_iterations(r.res)));
    std::printf("hoc_calls    %llu\n",
                static_cast<unsigned long long>(l1p_result_hoc_calls(r.res)));
    std::printf("time_s       %.9g\n", l1p_result_wall_time(r.res));
    if (!s_traj.empty()) {
      if (auto e = l1p_result_write_trajectory(r.res, s_traj.c_str())) return report(e);
    }
    if (!s_x.empty()) {
      if (auto e = l1p_result_write_solution(r.res, s_x.c_str())) return report(e);
    }
    return (st == L1P_STATUS_OPTIMAL || st == L1P_STATUS_HOC_OPTIMAL) ? kOk : kNotSolved;
  }

  if (*chk) {
    Handle h;
    if (auto e = l1p_instance_read(c_inst.c_str(), &h.inst)) return report(e);
    int ok = 0;
    const char* reason = "";
    double gap = 0.0;
    if (auto e = l1p_hoc_check_file(h.inst, c_x.c_str(), &opts, &ok, &reason, &gap)) {
      return report(e);
    }
    if (ok) {
      std::printf("Success gap=%.9g\n", gap);
      return kOk;
    }
    std::printf("Failure(%s)\n", reason);
    return kNotSolved;
  }

  if (*exp) {
    Handle h;
    if (auto e = l1p_instance_read(e_inst.c_str(), &h.inst)) return report(e);
    if (auto e = l1p_instance_export_lp(h.inst, e_out.c_str())) return report(e);
    std::printf("wrote %s (%zu rows, %zu columns)\n", e_out.c_str(),
                l1p_instance_rows(h.inst), 2 * l1p_instance_cols(h.inst));
    return kOk;
  }

  if (*ben) {
    size_t n = 0;
    if (auto e = l1p_bench_manifest(b_manifest.c_str(), b_out.c_str(), &opts, b_workers, &n)) {
      return report(e);
    }
    std::printf("records    %zu\n", n);
    std::printf("output     %s\n", b_out.c_str());
    return kOk;
  }

  if (*pro) {
    if (auto e = l1p_profile_records(p_records.c_str(), p_out.c_str())) return report(e);
    std::printf("output     %s\n", p_out.c_str());
    return kOk;
  }
  return kUsage;
}
