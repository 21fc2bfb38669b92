#include "l1pursuit/l1pursuit.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <new>
#include <string>

#include "core/bench.hpp"
#include "core/matrix_market.hpp"
#include "core/solvers.hpp"

struct l1p_instance {
  l1p::BpInstance inst;
};

struct l1p_result {
  l1p::SolveResult res;
  l1p::Index rows = 0;
};

namespace {

thread_local std::string g_last_error;

l1p_error code_of(l1p::ErrorCode c) {
  using l1p::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return L1P_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return L1P_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NotPositiveDefinite: return L1P_ERR_NOT_POSITIVE_DEFINITE;
    case ErrorCode::SolverFailure: return L1P_ERR_SOLVER_FAILURE;
    case ErrorCode::RankDeficient: return L1P_ERR_RANK_DEFICIENT;
    case ErrorCode::Io: return L1P_ERR_IO;
    case ErrorCode::Parse: return L1P_ERR_PARSE;
    case ErrorCode::Infeasible: return L1P_ERR_INFEASIBLE;
  }
  return L1P_ERR_INTERNAL;
}

l1p_error fail(l1p_error code, std::string msg) {
  g_last_error = std::move(msg);
  return code;
}

// Runs f, translating exceptions into codes.
template <class F>
l1p_error guarded(F&& f) {
  try {
    f();
    return L1P_OK;
  } catch (const l1p::Error& e) {
    return fail(code_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(L1P_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(L1P_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(L1P_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw l1p::Error(l1p::ErrorCode::InvalidArgument, what);
}

l1p::SolverOptions to_options(const l1p_options* o) {
  l1p::SolverOptions s;
  if (!o) return s;
  s.map.feasibility_tol = o->feas_tol;
  s.map.stall_tol = o->stall_tol;
  s.map.max_iterations = static_cast<std::size_t>(o->max_inner);
  s.max_outer = static_cast<std::size_t>(o->max_outer);
  s.time_limit = o->time_limit;
  s.hoc_tau_abs = o->hoc_tau_abs;
  s.hoc_tau_rel = o->hoc_tau_rel;
  s.hoc_tol = o->hoc_tol;
  s.bin_alpha = o->bin_alpha;
  s.bin_gap_tol = o->bin_gap_tol;
  s.isal1_patience = static_cast<std::size_t>(o->isal1_patience);
  s.isal1_step_floor = o->isal1_step_floor;
  switch (o->spd_mode) {
    case L1P_SPD_AUTO: s.spd_mode.reset(); break;
    case L1P_SPD_CHOLESKY: s.spd_mode = l1p::SpdMode::Cholesky; break;
    case L1P_SPD_CG: s.spd_mode = l1p::SpdMode::ConjugateGradient; break;
    default: require(false, "unknown spd_mode");
  }
  s.spd_tol = o->spd_tol;
  s.record_trajectory = o->record_trajectory != 0;
  s.validate();
  return s;
}

void copy_out(const l1p::Vector& v, double* out, std::size_t len) {
  require(out != nullptr, "output buffer is NULL");
  if (len != static_cast<std::size_t>(v.size())) {
    throw l1p::Error(l1p::ErrorCode::DimensionMismatch,
                     "buffer length " + std::to_string(len) + ", expected " +
                         std::to_string(v.size()));
  }
  for (std::size_t i = 0; i < len; ++i) out[i] = v[static_cast<l1p::Index>(i)];
}

l1p_error hoc_impl(const l1p_instance* inst, const l1p::Vector& x,
                   const l1p_options* options, int* success,
                   const char** reason, double* gap) {
  return guarded([&] {
    require(success != nullptr, "success is NULL");
    const l1p::SolverOptions opts = to_options(options);
    const l1p::HocOutcome h = l1p::hoc_check(inst->inst, x, opts);
    bool ok = h.success;
    // Accept only what survives an independent recheck.
    if (ok) ok = l1p::verify_certificate(inst->inst, h.x_hat, h.w_hat,
                                         opts.hoc_tol).ok();
    *success = ok ? 1 : 0;
    if (reason) {
      *reason = ok ? "" : (h.success ? l1p::to_string(l1p::HocFailure::GapTooLarge)
                                     : l1p::to_string(h.reason));
    }
    if (gap) *gap = h.gap;
  });
}

}  // namespace

extern "C" {

const char* l1p_version(void) { return L1P_VERSION_STRING; }

const char* l1p_last_error(void) { return g_last_error.c_str(); }

const char* l1p_error_name(l1p_error code) {
  switch (code) {
    case L1P_OK: return "ok";
    case L1P_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case L1P_ERR_DIMENSION_MISMATCH: return "dimension-mismatch";
    case L1P_ERR_NOT_POSITIVE_DEFINITE: return "not-positive-definite";
    case L1P_ERR_SOLVER_FAILURE: return "solver-failure";
    case L1P_ERR_RANK_DEFICIENT: return "rank-deficient";
    case L1P_ERR_IO: return "io";
    case L1P_ERR_PARSE: return "parse";
    case L1P_ERR_INFEASIBLE: return "infeasible";
    case L1P_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* l1p_status_name(l1p_status status) {
  switch (status) {
    case L1P_STATUS_OPTIMAL: return l1p::to_string(l1p::SolveStatus::Optimal);
    case L1P_STATUS_HOC_OPTIMAL: return l1p::to_string(l1p::SolveStatus::HocOptimal);
    case L1P_STATUS_STALLED: return l1p::to_string(l1p::SolveStatus::Stalled);
    case L1P_STATUS_ITER_LIMIT: return l1p::to_string(l1p::SolveStatus::IterLimit);
    case L1P_STATUS_TIME_LIMIT: return l1p::to_string(l1p::SolveStatus::TimeLimit);
  }
  return "unknown";
}

void l1p_options_default(l1p_options* o) {
  if (!o) return;
  const l1p::SolverOptions s;
  o->feas_tol = s.map.feasibility_tol;
  o->stall_tol = s.map.stall_tol;
  o->max_inner = s.map.max_iterations;
  o->max_outer = s.max_outer;
  o->time_limit = s.time_limit;
  o->hoc_tau_abs = s.hoc_tau_abs;
  o->hoc_tau_rel = s.hoc_tau_rel;
  o->hoc_tol = s.hoc_tol;
  o->bin_alpha = s.bin_alpha;
  o->bin_gap_tol = s.bin_gap_tol;
  o->isal1_patience = s.isal1_patience;
  o->isal1_step_floor = s.isal1_step_floor;
  o->spd_mode = L1P_SPD_AUTO;
  o->spd_tol = s.spd_tol;
  o->record_trajectory = s.record_trajectory ? 1 : 0;
}

size_t l1p_solver_count(void) { return l1p::solver_names().size(); }

const char* l1p_solver_name(size_t index) {
  static const std::vector<std::string> names = l1p::solver_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

l1p_error l1p_instance_generate(size_t m, size_t n, size_t s,
                                double dynamic_range, uint64_t seed,
                                l1p_instance** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    l1p::GenSpec spec;
    spec.m = static_cast<l1p::Index>(m);
    spec.n = static_cast<l1p::Index>(n);
    spec.sparsity = static_cast<l1p::Index>(s);
    spec.dynamic_range = dynamic_range;
    spec.seed = seed;
    *out = new l1p_instance{l1p::generate(spec)};
  });
}

l1p_error l1p_instance_from_dense(size_t m, size_t n, const double* a,
                                  const double* b, l1p_instance** out) {
  return guarded([&] {
    require(out != nullptr && a != nullptr && b != nullptr, "NULL argument");
    const auto rows = static_cast<l1p::Index>(m);
    const auto cols = static_cast<l1p::Index>(n);
    l1p::DenseMatrix am = Eigen::Map<const l1p::DenseMatrix>(a, rows, cols);
    l1p::Vector bv = Eigen::Map<const l1p::Vector>(b, rows);
    *out = new l1p_instance{
        l1p::make_instance(l1p::Matrix(std::move(am)), std::move(bv))};
  });
}

l1p_error l1p_instance_read(const char* dir, l1p_instance** out) {
  return guarded([&] {
    require(dir != nullptr && out != nullptr, "NULL argument");
    *out = new l1p_instance{l1p::read_instance(dir)};
  });
}

l1p_error l1p_instance_write(const l1p_instance* inst, const char* dir) {
  return guarded([&] {
    require(inst != nullptr && dir != nullptr, "NULL argument");
    l1p::write_instance(inst->inst, dir);
  });
}

void l1p_instance_free(l1p_instance* inst) { delete inst; }

size_t l1p_instance_rows(const l1p_instance* inst) {
  return inst ? static_cast<size_t>(inst->inst.rows()) : 0;
}

size_t l1p_instance_cols(const l1p_instance* inst) {
  return inst ? static_cast<size_t>(inst->inst.cols()) : 0;
}

const char* l1p_instance_label(const l1p_instance* inst) {
  return inst ? inst->inst.meta.label.c_str() : "";
}

int l1p_instance_has_planted(const l1p_instance* inst) {
  return inst && inst->inst.planted ? 1 : 0;
}

l1p_error l1p_instance_planted(const l1p_instance* inst, double* x,
                               size_t len) {
  return guarded([&] {
    require(inst != nullptr, "instance is NULL");
    require(inst->inst.planted.has_value(), "instance has no planted solution");
    copy_out(*inst->inst.planted, x, len);
  });
}

l1p_error l1p_instance_check_erc(l1p_instance* inst, int* holds,
                                 double* value) {
  return guarded([&] {
    require(inst != nullptr && holds != nullptr, "NULL argument");
    const l1p::ErcResult r = l1p::check_erc(inst->inst);
    inst->inst.meta.erc_value = r.value;
    *holds = r.holds ? 1 : 0;
    if (value) *value = r.value;
  });
}

l1p_error l1p_instance_export_lp(const l1p_instance* inst, const char* path) {
  return guarded([&] {
    require(inst != nullptr && path != nullptr, "NULL argument");
    l1p::export_lp(inst->inst, path);
  });
}

l1p_error l1p_lp_oracle(const l1p_instance* inst, double* objective, double* x,
                        size_t len, int* tie) {
  return guarded([&] {
    require(inst != nullptr && objective != nullptr, "NULL argument");
    const l1p::LpOracleResult r = l1p::lp_oracle(inst->inst);
    if (x) copy_out(r.solution, x, len);
    *objective = r.objective;
    if (tie) *tie = r.tie ? 1 : 0;
  });
}

l1p_error l1p_mps_vertex_optimum(const char* path, double* objective) {
  return guarded([&] {
    require(path != nullptr && objective != nullptr, "NULL argument");
    *objective = l1p::standard_lp_vertex_optimum(l1p::read_mps(path));
  });
}

l1p_error l1p_solve(const l1p_instance* inst, const char* solver,
                    const l1p_options* options, l1p_result** out) {
  return guarded([&] {
    require(inst != nullptr && solver != nullptr && out != nullptr,
            "NULL argument");
    l1p::SolveResult res = l1p::solve(inst->inst, solver, to_options(options));
    *out = new l1p_result{std::move(res), inst->inst.rows()};
  });
}

void l1p_result_free(l1p_result* result) { delete result; }

l1p_status l1p_result_status(const l1p_result* r) {
  switch (r->res.status) {
    case l1p::SolveStatus::Optimal: return L1P_STATUS_OPTIMAL;
    case l1p::SolveStatus::HocOptimal: return L1P_STATUS_HOC_OPTIMAL;
    case l1p::SolveStatus::Stalled: return L1P_STATUS_STALLED;
    case l1p::SolveStatus::IterLimit: return L1P_STATUS_ITER_LIMIT;
    case l1p::SolveStatus::TimeLimit: return L1P_STATUS_TIME_LIMIT;
  }
  return L1P_STATUS_STALLED;
}

double l1p_result_objective(const l1p_result* r) { return r->res.objective; }
double l1p_result_residual(const l1p_result* r) { return r->res.residual; }
double l1p_result_wall_time(const l1p_result* r) { return r->res.wall_time; }
uint64_t l1p_result_outer_iterations(const l1p_result* r) {
  return r->res.outer_iterations;
}
uint64_t l1p_result_inner_iterations(const l1p_result* r) {
  return r->res.inner_iterations;
}
uint64_t l1p_result_hoc_calls(const l1p_result* r) { return r->res.hoc_calls; }
size_t l1p_result_size(const l1p_result* r) {
  return static_cast<size_t>(r->res.x.size());
}

l1p_error l1p_result_solution(const l1p_result* r, double* x, size_t len) {
  return guarded([&] {
    require(r != nullptr, "result is NULL");
    copy_out(r->res.x, x, len);
  });
}

int l1p_result_has_certificate(const l1p_result* r) {
  return r && r->res.certificate ? 1 : 0;
}

l1p_error l1p_result_certificate(const l1p_result* r, double* w, size_t len,
                                 double* duality_gap) {
  return guarded([&] {
    require(r != nullptr, "result is NULL");
    require(r->res.certificate.has_value(), "result carries no certificate");
    copy_out(*r->res.certificate, w, len);
    if (duality_gap) *duality_gap = r->res.duality_gap.value_or(0.0);
  });
}

size_t l1p_result_trajectory_length(const l1p_result* r) {
  return r ? r->res.trajectory.size() : 0;
}

l1p_error l1p_result_trajectory_point(const l1p_result* r, size_t index,
                                      l1p_trajectory_point* p) {
  return guarded([&] {
    require(r != nullptr && p != nullptr, "NULL argument");
    require(index < r->res.trajectory.size(), "trajectory index out of range");
    const auto& t = r->res.trajectory[index];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    p->k = t.k;
    p->r = t.r;
    p->upper = t.upper.value_or(nan);
    p->width = t.width.value_or(nan);
    p->norm_d = t.norm_d;
    p->norm1_z = t.norm1_z;
    p->inner_iters = t.inner_iters;
    p->elapsed = t.elapsed;
  });
}

l1p_error l1p_result_write_trajectory(const l1p_result* r, const char* path) {
  return guarded([&] {
    require(r != nullptr && path != nullptr, "NULL argument");
    std::ofstream out(path);
    if (!out) throw l1p::Error(l1p::ErrorCode::Io, std::string("cannot write ") + path);
    l1p::write_trajectory_csv(r->res.trajectory, out);
    out.close();
    if (!out) throw l1p::Error(l1p::ErrorCode::Io, std::string("failed writing ") + path);
  });
}

l1p_error l1p_result_write_solution(const l1p_result* r, const char* path) {
  return guarded([&] {
    require(r != nullptr && path != nullptr, "NULL argument");
    l1p::mm::write_vector(r->res.x, path);
  });
}

l1p_error l1p_hoc_check(const l1p_instance* inst, const double* x, size_t len,
                        const l1p_options* options, int* success,
                        const char** reason, double* gap) {
  if (!inst || !x) return fail(L1P_ERR_INVALID_ARGUMENT, "NULL argument");
  if (len != static_cast<size_t>(inst->inst.cols())) {
    return fail(L1P_ERR_DIMENSION_MISMATCH, "solution length does not match A");
  }
  const l1p::Vector v =
      Eigen::Map<const l1p::Vector>(x, static_cast<l1p::Index>(len));
  return hoc_impl(inst, v, options, success, reason, gap);
}

l1p_error l1p_hoc_check_file(const l1p_instance* inst,
                             const char* solution_path,
                             const l1p_options* options, int* success,
                             const char** reason, double* gap) {
  l1p::Vector x;
  const l1p_error e = guarded([&] {
    require(inst != nullptr && solution_path != nullptr, "NULL argument");
    x = l1p::mm::read_vector(solution_path);
    if (x.size() != inst->inst.cols()) {
      throw l1p::Error(l1p::ErrorCode::DimensionMismatch,
                       std::string(solution_path) + ": length " +
                           std::to_string(x.size()) + ", expected " +
                           std::to_string(inst->inst.cols()));
    }
  });
  if (e != L1P_OK) return e;
  return hoc_impl(inst, x, options, success, reason, gap);
}

l1p_error l1p_bench_manifest(const char* manifest, const char* out_dir,
                             const l1p_options* options, size_t workers,
                             size_t* records) {
  return guarded([&] {
    require(manifest != nullptr && out_dir != nullptr, "NULL argument");
    namespace fs = std::filesystem;
    const l1p::BenchManifest m = l1p::load_manifest(manifest);
    l1p::BenchOptions bo;
    bo.solver = to_options(options);
    if (m.time_limit) bo.solver.time_limit = *m.time_limit;
    bo.solver.validate();
    bo.workers = workers;

    std::vector<l1p::BpInstance> instances;
    for (const auto& dir : m.instances) instances.push_back(l1p::read_instance(dir));

    const fs::path out = out_dir;
    fs::create_directories(out);
    bo.stream_path = out / "records.partial.csv";
    const auto recs = l1p::run_suite(instances, m.solvers, bo);
    l1p::write_records_csv(recs, out / "records.csv");
    fs::remove(*bo.stream_path);

    const l1p::PerfProfile prof = l1p::performance_profile(recs);
    l1p::write_profile_csv(prof, out / "profile.csv");
    l1p::write_profile_svg(prof, out / "profile.svg");
    if (records) *records = recs.size();
  });
}

l1p_error l1p_profile_records(const char* records_csv, const char* out_dir) {
  return guarded([&] {
    require(records_csv != nullptr && out_dir != nullptr, "NULL argument");
    namespace fs = std::filesystem;
    const l1p::PerfProfile prof =
        l1p::performance_profile(l1p::read_records_csv(records_csv));
    const fs::path out = out_dir;
    fs::create_directories(out);
    l1p::write_profile_csv(prof, out / "profile.csv");
    l1p::write_profile_svg(prof, out / "profile.svg");
  });
}

}  // extern "C"
