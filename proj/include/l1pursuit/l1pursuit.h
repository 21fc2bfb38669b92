/* l1pursuit: basis pursuit, min ||x||_1 s.t. Ax = b, by alternating projections.
 *
 * Handles are opaque. Every fallible call returns an l1p_error; on failure
 * l1p_last_error() describes it (thread-local, valid until the next failing
 * call on the same thread). Output pointers are left untouched on failure.
 */
#ifndef L1PURSUIT_H
#define L1PURSUIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(L1P_BUILDING_LIBRARY)
#    define L1P_API __declspec(dllexport)
#  else
#    define L1P_API __declspec(dllimport)
#  endif
#else
#  define L1P_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct l1p_instance l1p_instance;
typedef struct l1p_result l1p_result;

typedef enum l1p_error {
  L1P_OK = 0,
  L1P_ERR_INVALID_ARGUMENT = 1,
  L1P_ERR_DIMENSION_MISMATCH = 2,
  L1P_ERR_NOT_POSITIVE_DEFINITE = 3,
  L1P_ERR_SOLVER_FAILURE = 4,
  L1P_ERR_RANK_DEFICIENT = 5,
  L1P_ERR_IO = 6,
  L1P_ERR_PARSE = 7,
  L1P_ERR_INFEASIBLE = 8,
  L1P_ERR_INTERNAL = 9
} l1p_error;

typedef enum l1p_status {
  L1P_STATUS_OPTIMAL = 0,
  L1P_STATUS_HOC_OPTIMAL = 1,
  L1P_STATUS_STALLED = 2,
  L1P_STATUS_ITER_LIMIT = 3,
  L1P_STATUS_TIME_LIMIT = 4
} l1p_status;

typedef enum l1p_spd_mode {
  L1P_SPD_AUTO = -1, /* Cholesky for dense A, CG for sparse A */
  L1P_SPD_CHOLESKY = 0,
  L1P_SPD_CG = 1
} l1p_spd_mode;

typedef struct l1p_options {
  double feas_tol;          /* MAP intersection test, ||x - z||_inf */
  double stall_tol;         /* MAP relative progress test */
  uint64_t max_inner;       /* MAP sweeps per call */
  uint64_t max_outer;
  double time_limit;        /* seconds, per solve */
  double hoc_tau_abs;       /* support threshold */
  double hoc_tau_rel;
  double hoc_tol;
  double bin_alpha;
  double bin_gap_tol;
  uint64_t isal1_patience;
  double isal1_step_floor;
  int spd_mode;             /* l1p_spd_mode */
  double spd_tol;
  int record_trajectory;
} l1p_options;

typedef struct l1p_trajectory_point {
  uint64_t k;
  double r;
  double upper;     /* NaN unless the binary-search variant produced it */
  double width;     /* NaN likewise */
  double norm_d;
  double norm1_z;
  uint64_t inner_iters;
  double elapsed;
} l1p_trajectory_point;

L1P_API const char* l1p_version(void);
L1P_API const char* l1p_last_error(void);
L1P_API const char* l1p_error_name(l1p_error code);
L1P_API const char* l1p_status_name(l1p_status status);

L1P_API void l1p_options_default(l1p_options* options);

/* Solver names: bpmap, bpmap-hoc, bpmap-bin, bpmap-hoc-bin, isal1. */
L1P_API size_t l1p_solver_count(void);
L1P_API const char* l1p_solver_name(size_t index);

/* ---- instances ---------------------------------------------------------- */

L1P_API l1p_error l1p_instance_generate(size_t m, size_t n, size_t s,
                                        double dynamic_range, uint64_t seed,
                                        l1p_instance** out);
/* a is m x n, column-major. */
L1P_API l1p_error l1p_instance_from_dense(size_t m, size_t n, const double* a,
                                          const double* b, l1p_instance** out);
L1P_API l1p_error l1p_instance_read(const char* dir, l1p_instance** out);
L1P_API l1p_error l1p_instance_write(const l1p_instance* inst, const char* dir);
L1P_API void l1p_instance_free(l1p_instance* inst);

L1P_API size_t l1p_instance_rows(const l1p_instance* inst);
L1P_API size_t l1p_instance_cols(const l1p_instance* inst);
L1P_API const char* l1p_instance_label(const l1p_instance* inst);
L1P_API int l1p_instance_has_planted(const l1p_instance* inst);
L1P_API l1p_error l1p_instance_planted(const l1p_instance* inst, double* x,
                                       size_t len);

/* Also records the value in the instance metadata, so a later
 * l1p_instance_write stores it in meta.json. */
L1P_API l1p_error l1p_instance_check_erc(l1p_instance* inst, int* holds,
                                         double* value);
L1P_API l1p_error l1p_instance_export_lp(const l1p_instance* inst,
                                         const char* path);
/* Exact optimum by support enumeration, n <= 12. x may be NULL. */
L1P_API l1p_error l1p_lp_oracle(const l1p_instance* inst, double* objective,
                                double* x, size_t len, int* tie);
/* Reads an MPS file written by l1p_instance_export_lp and returns the
 * optimum over its basic feasible solutions (small problems only). */
L1P_API l1p_error l1p_mps_vertex_optimum(const char* path, double* objective);

/* ---- solving ------------------------------------------------------------ */

/* options may be NULL for defaults. */
L1P_API l1p_error l1p_solve(const l1p_instance* inst, const char* solver,
                            const l1p_options* options, l1p_result** out);
L1P_API void l1p_result_free(l1p_result* result);

L1P_API l1p_status l1p_result_status(const l1p_result* result);
L1P_API double l1p_result_objective(const l1p_result* result);
L1P_API double l1p_result_residual(const l1p_result* result);
L1P_API double l1p_result_wall_time(const l1p_result* result);
L1P_API uint64_t l1p_result_outer_iterations(const l1p_result* result);
L1P_API uint64_t l1p_result_inner_iterations(const l1p_result* result);
L1P_API uint64_t l1p_result_hoc_calls(const l1p_result* result);
L1P_API size_t l1p_result_size(const l1p_result* result);
L1P_API l1p_error l1p_result_solution(const l1p_result* result, double* x,
                                      size_t len);
L1P_API int l1p_result_has_certificate(const l1p_result* result);
/* w has one entry per row of A. */
L1P_API l1p_error l1p_result_certificate(const l1p_result* result, double* w,
                                         size_t len, double* duality_gap);
L1P_API size_t l1p_result_trajectory_length(const l1p_result* result);
L1P_API l1p_error l1p_result_trajectory_point(const l1p_result* result,
                                              size_t index,
                                              l1p_trajectory_point* point);
L1P_API l1p_error l1p_result_write_trajectory(const l1p_result* result,
                                              const char* path);
/* MatrixMarket array vector. */
L1P_API l1p_error l1p_result_write_solution(const l1p_result* result,
                                            const char* path);

/* ---- optimality check ----------------------------------------------------- */

/* success is 1 on a verified certificate. reason is a static string
 * ("support-empty", "dual-infeasible", ...) or "" on success. */
L1P_API l1p_error l1p_hoc_check(const l1p_instance* inst, const double* x,
                                size_t len, const l1p_options* options,
                                int* success, const char** reason,
                                double* gap);
L1P_API l1p_error l1p_hoc_check_file(const l1p_instance* inst,
                                     const char* solution_path,
                                     const l1p_options* options, int* success,
                                     const char** reason, double* gap);

/* ---- benchmarking --------------------------------------------------------- */

/* Runs every (instance, solver) cell of a JSON manifest and writes
 * records.csv, profile.csv and profile.svg to out_dir. A manifest
 * time_limit overrides options->time_limit. */
L1P_API l1p_error l1p_bench_manifest(const char* manifest, const char* out_dir,
                                     const l1p_options* options,
                                     size_t workers, size_t* records);
/* profile.csv and profile.svg from an existing records.csv. */
L1P_API l1p_error l1p_profile_records(const char* records_csv,
                                      const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif
