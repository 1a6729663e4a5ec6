#ifndef CEQ_CEQ_H
#define CEQ_CEQ_H

/* C interface to the commute equilibrium library.
 *
 * All handles are opaque and owned by the caller; release them with the
 * matching *_free function (NULL is accepted). Every function that can fail
 * returns a ceq_status and leaves a message in ceq_last_error(), which is
 * per thread and valid until the next failing call on that thread. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(CEQ_BUILDING_LIBRARY)
#    define CEQ_API __declspec(dllexport)
#  else
#    define CEQ_API __declspec(dllimport)
#  endif
#else
#  define CEQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ceq_status {
    CEQ_OK = 0,
    CEQ_ERR_INPUT = 1,    /* bad scenario, parse error, argument out of range */
    CEQ_ERR_SOLVER = 2,   /* root bracketing, conservation or convergence failure */
    CEQ_ERR_IO = 3,       /* file could not be read or written */
    CEQ_ERR_INTERNAL = 4
} ceq_status;

typedef enum ceq_vehicle_class {
    CEQ_GV = 0,
    CEQ_EV = 1
} ceq_vehicle_class;

typedef struct ceq_scenario ceq_scenario;
typedef struct ceq_solve ceq_solve;
typedef struct ceq_sweep ceq_sweep;
typedef struct ceq_toll ceq_toll;
typedef struct ceq_oracle ceq_oracle;

CEQ_API const char* ceq_version(void);
CEQ_API const char* ceq_last_error(void);
CEQ_API const char* ceq_status_name(ceq_status status);

/* ---- scenario ---------------------------------------------------------- */

/* Built-in base case. */
CEQ_API ceq_status ceq_scenario_default(ceq_scenario** out);
CEQ_API ceq_status ceq_scenario_load(const char* path, ceq_scenario** out);
CEQ_API ceq_status ceq_scenario_parse(const char* text, ceq_scenario** out);
CEQ_API ceq_status ceq_scenario_save(const ceq_scenario* s, const char* path);
CEQ_API ceq_status ceq_scenario_clone(const ceq_scenario* s, ceq_scenario** out);
CEQ_API void ceq_scenario_free(ceq_scenario* s);

/* Keys are dotted, e.g. "demand.mpr". Setting does not validate. */
CEQ_API ceq_status ceq_scenario_set(ceq_scenario* s, const char* key, double value);
CEQ_API ceq_status ceq_scenario_get(const ceq_scenario* s, const char* key, double* value);
CEQ_API size_t ceq_scenario_key_count(void);
CEQ_API const char* ceq_scenario_key(size_t i);

/* Applies CEQ_<SECTION>_<KEY> variables from the process environment and
 * revalidates. *applied (may be NULL) receives the number of keys set. */
CEQ_API ceq_status ceq_scenario_apply_env(ceq_scenario* s, size_t* applied);
CEQ_API ceq_status ceq_scenario_validate(const ceq_scenario* s);

/* ---- solve ------------------------------------------------------------- */

typedef struct ceq_metrics {
    double cost_gv;     /* equilibrium cost, 0 when the class is absent */
    double cost_ev;
    double t0;
    double t1;
    double duration;
    double max_delay;
    double peak_flow;
    double ecp;         /* against the all-GV baseline */
    double ecd_max;
    double baseline_max_delay;
    double cost_traveltime;
    double cost_energy;
    double cost_schedule;
    double toll_revenue;
    double social_cost;
} ceq_metrics;

typedef struct ceq_profile_row {
    double t_hours;
    double delay_hours;
    double flow_total;
    double flow_gv;
    double flow_ev;
    double cost_traveltime;
    double cost_energy;
    double cost_schedule;
    double toll;
    double cost_total;
} ceq_profile_row;

CEQ_API ceq_status ceq_solve_run(const ceq_scenario* s, ceq_solve** out);
CEQ_API void ceq_solve_free(ceq_solve* r);
CEQ_API ceq_status ceq_solve_metrics(const ceq_solve* r, ceq_metrics* out);
CEQ_API size_t ceq_solve_profile_size(const ceq_solve* r);
CEQ_API ceq_status ceq_solve_profile_row(const ceq_solve* r, size_t i, ceq_profile_row* out);
CEQ_API ceq_status ceq_solve_write_profile(const ceq_solve* r, const char* path);
CEQ_API ceq_status ceq_solve_write_summary(const ceq_solve* r, const char* path);

/* ---- sweep ------------------------------------------------------------- */

typedef struct ceq_sweep_row {
    double mpr;
    double cost_gv;
    double cost_ev;
    double max_delay;
    double duration;
    double ecp;
    double peak_flow;
    double social_cost;
} ceq_sweep_row;

/* mprs == NULL (or count == 0) runs 0.0, 0.1, ..., 1.0. */
CEQ_API ceq_status ceq_sweep_run(const ceq_scenario* s, const double* mprs, size_t count, ceq_sweep** out);
CEQ_API void ceq_sweep_free(ceq_sweep* r);
CEQ_API size_t ceq_sweep_size(const ceq_sweep* r);
CEQ_API ceq_status ceq_sweep_row_at(const ceq_sweep* r, size_t i, ceq_sweep_row* out);
CEQ_API ceq_status ceq_sweep_write_csv(const ceq_sweep* r, const char* path);

/* ---- toll -------------------------------------------------------------- */

typedef struct ceq_toll_summary {
    double lambda;
    double residual;
    double max_toll;
    double so_t0;
    double so_t1;
    double so_max_delay;
    double so_social_cost;
    double ue_cost;
    double ue_t0;
    double ue_t1;
    double ue_max_delay;
    double ue_social_cost;
    double ecd_untolled_max;
    double ecd_tolled_max;
    double ecd_tolled_min;
} ceq_toll_summary;

CEQ_API ceq_status ceq_toll_run(const ceq_scenario* s, ceq_toll** out);
CEQ_API void ceq_toll_free(ceq_toll* r);
CEQ_API ceq_status ceq_toll_summary_get(const ceq_toll* r, ceq_toll_summary* out);
CEQ_API size_t ceq_toll_profile_size(const ceq_toll* r);
CEQ_API ceq_status ceq_toll_profile_row(const ceq_toll* r, size_t i, ceq_profile_row* out);
/* System-optimal profile with the toll column filled. */
CEQ_API ceq_status ceq_toll_write_profile(const ceq_toll* r, const char* path);
CEQ_API ceq_status ceq_toll_write_untolled_profile(const ceq_toll* r, const char* path);
CEQ_API ceq_status ceq_toll_write_summary(const ceq_toll* r, const char* path);

/* ---- day-to-day oracle ------------------------------------------------- */

typedef struct ceq_oracle_summary {
    long days;
    int converged;
    int ev_contiguous;
    double relative_gap_gv;
    double relative_gap_ev;
    double mass_gv;
    double mass_ev;
    size_t bins_compared;
    double max_relative_error;
    double max_error_vs_peak;
    double worst_center;
} ceq_oracle_summary;

typedef struct ceq_oracle_bin {
    double center;
    double mass_gv;
    double mass_ev;
    double delay;
    double analytic_delay;
} ceq_oracle_bin;

CEQ_API ceq_status ceq_oracle_run(const ceq_scenario* s, ceq_oracle** out);
CEQ_API void ceq_oracle_free(ceq_oracle* r);
CEQ_API ceq_status ceq_oracle_summary_get(const ceq_oracle* r, ceq_oracle_summary* out);
CEQ_API size_t ceq_oracle_size(const ceq_oracle* r);
CEQ_API ceq_status ceq_oracle_bin_at(const ceq_oracle* r, size_t i, ceq_oracle_bin* out);
CEQ_API ceq_status ceq_oracle_write_profile(const ceq_oracle* r, const char* path);
CEQ_API ceq_status ceq_oracle_write_trace(const ceq_oracle* r, const char* path);
CEQ_API ceq_status ceq_oracle_write_summary(const ceq_oracle* r, const char* path);

#ifdef __cplusplus
}
#endif

#endif
