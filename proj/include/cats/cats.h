/*
 * C interface to the chemo-alarm-taxis simulator.
 *
 * Objects are opaque handles created by cats_*_create/load/run functions and
 * released with the matching cats_*_free. Every fallible call returns a
 * cats_status; on failure the message of the most recent error on the calling
 * thread is available from cats_last_error().
 */
#ifndef CATS_CATS_H
#define CATS_CATS_H

#include <stddef.h>
#include <stdint.h>

#if defined(CATS_BUILDING_LIBRARY)
#define CATS_API __attribute__((visibility("default")))
#else
#define CATS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cats_status {
  CATS_OK = 0,
  CATS_E_INVALID_ARGUMENT = 1,
  CATS_E_BAD_EXTENT = 2,
  CATS_E_TOO_FEW_NODES = 3,
  CATS_E_GRID_MISMATCH = 4,
  CATS_E_DEGENERATE_DENOMINATOR = 5,
  CATS_E_INADMISSIBLE_EQUILIBRIUM = 6,
  CATS_E_NEGATIVE_BLOWUP = 7,
  CATS_E_NONFINITE_STATE = 8,
  CATS_E_KIND_MISMATCH = 9,
  CATS_E_NEGATIVE_FIELD = 10,
  CATS_E_MISSING_SAMPLES = 11,
  CATS_E_TOO_FEW_SAMPLES = 12,
  CATS_E_ALL_BELOW_FLOOR = 13,
  CATS_E_ABORTED_TRAJECTORY = 14,
  CATS_E_MISSING_KEY = 15,
  CATS_E_BAD_VALUE = 16,
  CATS_E_UNKNOWN_KEY = 17,
  CATS_E_IO = 18,
  CATS_E_INTERNAL = 99
} cats_status;

typedef enum cats_equilibrium_kind {
  CATS_EXTINCTION = 0,
  CATS_SECONDARY_ONLY = 1,
  CATS_PRIMARY_ONLY = 2,
  CATS_PREY_ONLY = 3,
  CATS_SECONDARY_VANISHING = 4,
  CATS_PRIMARY_VANISHING = 5,
  CATS_PREY_VANISHING = 6,
  CATS_COEXISTENCE = 7
} cats_equilibrium_kind;

typedef enum cats_condition_target {
  CATS_COND01 = 0,
  CATS_THM12 = 1,
  CATS_THM13 = 2,
  CATS_THM14_1 = 3,
  CATS_THM14_2 = 4
} cats_condition_target;

typedef enum cats_energy_kind {
  CATS_ENERGY_NONE = -1,
  CATS_ENERGY_E1 = 0,
  CATS_ENERGY_E2 = 1,
  CATS_ENERGY_E3 = 2,
  CATS_ENERGY_E4 = 3
} cats_energy_kind;

typedef enum cats_run_status {
  CATS_RUN_REACHED_T_END = 0,
  CATS_RUN_CONVERGED_EARLY = 1,
  CATS_RUN_ABORTED = 2
} cats_run_status;

typedef struct cats_params {
  double d1, d2, d3, d4;
  double chi1, chi2, xi;
  double mu1, mu2, mu3;
  double a1, a2, a3, a4, a5, a6;
  double alpha, beta, gamma;
} cats_params;

typedef struct cats_equilibrium {
  int kind; /* cats_equilibrium_kind */
  double u, v, w, z;
  int admissible;
  double residual; /* largest |reaction rate| at the point */
} cats_equilibrium;

typedef struct cats_clause {
  const char* label; /* owned by the report */
  const char* text;
  double lhs, rhs, margin;
  int relation; /* 0: lhs < rhs, 1: lhs > rhs */
  size_t rhs_term_count;
  double rhs_terms[2];
  int satisfied;
} cats_clause;

typedef struct cats_sample {
  double t;
  int has_distance;
  double distance[4];
  int has_energy;
  double energy;
  double mass[3];
  double sup_v, sup_w;
} cats_sample;

typedef struct cats_verdict {
  double distance[4];
  double tol;
  int pass;
} cats_verdict;

typedef struct cats_decay_report {
  double max_violation;
  double nonincreasing_fraction;
  size_t transitions;
} cats_decay_report;

typedef struct cats_decay_fit {
  double rate, intercept, r_squared, t_start, t_end;
  size_t used;
} cats_decay_fit;

typedef struct cats_run_info {
  int status; /* cats_run_status */
  uint64_t steps;
  uint64_t clamp_count;
  uint64_t node_updates;
  double dt_first, dt_min, dt_max;
  double final_t;
  int abort_code; /* cats_status of the failing step, CATS_OK if none */
  double abort_t;
} cats_run_info;

typedef struct cats_config cats_config;
typedef struct cats_report cats_report;
typedef struct cats_trajectory cats_trajectory;

CATS_API const char* cats_version(void);
CATS_API const char* cats_last_error(void);
CATS_API const char* cats_status_name(cats_status status);

/* Configuration */
CATS_API cats_status cats_config_load(const char* path, cats_config** out);
CATS_API cats_status cats_config_parse(const char* text, cats_config** out);
CATS_API void cats_config_free(cats_config* cfg);
CATS_API cats_status cats_config_params(const cats_config* cfg, cats_params* out);
CATS_API cats_status cats_config_set_nodes(cats_config* cfg, size_t nodes);
CATS_API cats_status cats_config_set_t_end(cats_config* cfg, double t_end);
CATS_API cats_status cats_config_set_energy(cats_config* cfg, int energy);
/* Target steady state; -1 clears it. *out is -1 when unset. */
CATS_API cats_status cats_config_set_target(cats_config* cfg, int kind);
CATS_API cats_status cats_config_target(const cats_config* cfg, int* out);
/* Rendered config text; owned by cfg, valid until the next call on cfg. */
CATS_API const char* cats_config_text(cats_config* cfg);

/* Model algebra */
CATS_API cats_status cats_reaction_terms(double u, double v, double w, double z,
                                         const cats_params* p, double out[4]);
CATS_API cats_status cats_coexistence_equilibrium(const cats_params* p,
                                                  cats_equilibrium* out);
CATS_API cats_status cats_enumerate_equilibria(const cats_params* p,
                                               cats_equilibrium out[8]);
CATS_API const char* cats_equilibrium_kind_name(int kind);
/* -1 when the name is unknown. */
CATS_API int cats_equilibrium_kind_parse(const char* name);

/* Condition reports. CATS_COND01 ignores sup_v and sup_w. */
CATS_API cats_status cats_check_conditions(const cats_params* p, int target,
                                           double sup_v, double sup_w,
                                           cats_report** out);
CATS_API void cats_report_free(cats_report* report);
CATS_API size_t cats_report_clause_count(const cats_report* report);
CATS_API cats_status cats_report_clause(const cats_report* report, size_t index,
                                        cats_clause* out);
CATS_API int cats_report_all_satisfied(const cats_report* report);
CATS_API double cats_report_gamma1(const cats_report* report);
CATS_API double cats_report_gamma2(const cats_report* report);

/* Simulation. A numerical failure still yields a trajectory whose run info
 * carries CATS_RUN_ABORTED and the failing step's status. */
CATS_API cats_status cats_simulate(const cats_config* cfg, cats_trajectory** out);
CATS_API void cats_trajectory_free(cats_trajectory* traj);
CATS_API cats_status cats_trajectory_info(const cats_trajectory* traj,
                                          cats_run_info* out);
CATS_API const char* cats_trajectory_abort_message(const cats_trajectory* traj);
CATS_API size_t cats_trajectory_sample_count(const cats_trajectory* traj);
CATS_API cats_status cats_trajectory_sample(const cats_trajectory* traj,
                                            size_t index, cats_sample* out);
/* Final values of one field ('u', 'v', 'w' or 'z'); copies up to capacity
 * values and stores the node count in *count. */
CATS_API cats_status cats_trajectory_field(const cats_trajectory* traj,
                                           char field, double* values,
                                           size_t capacity, size_t* count);

/* Diagnostics */
CATS_API cats_status cats_convergence_verdict(const cats_trajectory* traj,
                                              int kind, double tol,
                                              cats_verdict* out);
CATS_API cats_status cats_decay_monitor(const cats_trajectory* traj,
                                        int energy, size_t skip_leading,
                                        cats_decay_report* out);
/* Fits the largest per-field distance to the trajectory target. */
CATS_API cats_status cats_fit_decay(const cats_trajectory* traj,
                                    double window_fraction,
                                    cats_decay_fit* out);

/* Output */
CATS_API cats_status cats_write_timeseries(const cats_trajectory* traj,
                                           const char* path);
CATS_API cats_status cats_write_snapshot(const cats_trajectory* traj,
                                         char field, const char* path);
/* timeseries.csv, u/v/w/z.cats1, manifest.json (written last) into dir. */
CATS_API cats_status cats_write_run_outputs(const cats_config* cfg,
                                            const cats_trajectory* traj,
                                            const char* dir);

#ifdef __cplusplus
}
#endif

#endif /* CATS_CATS_H */
