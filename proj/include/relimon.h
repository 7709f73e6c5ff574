/* relimon — software reliability monitoring with order-statistics control
 * charts. C API: opaque handles, status-code returns, thread-local error
 * messages via relimon_last_error(). Every object created by the library is
 * released with the matching *_free(); strings returned through char** out
 * parameters are released with relimon_string_free().
 */
#ifndef RELIMON_H
#define RELIMON_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(RELIMON_BUILD)
#define RELIMON_API __declspec(dllexport)
#else
#define RELIMON_API __declspec(dllimport)
#endif
#else
#define RELIMON_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum relimon_status {
  RELIMON_OK = 0,
  RELIMON_ERR_INVALID_ARGUMENT = 1,
  RELIMON_ERR_PARSE = 2,
  RELIMON_ERR_NO_ROOT = 3,
  RELIMON_ERR_NO_CONVERGENCE = 4,
  RELIMON_ERR_OVERFLOW = 5,
  RELIMON_ERR_IO = 6,
  RELIMON_ERR_INTERNAL = 7
} relimon_status;

typedef enum relimon_format {
  RELIMON_FORMAT_PLAIN = 0,
  RELIMON_FORMAT_CSV = 1
} relimon_format;

typedef enum relimon_mscale {
  RELIMON_MSCALE_BASE = 0,   /* plot a(1-e^{-b s_k}) differences */
  RELIMON_MSCALE_ORDERED = 1 /* plot [a(1-e^{-b s_k})]^r differences */
} relimon_mscale;

typedef enum relimon_point_status {
  RELIMON_POINT_BELOW_LCL = -1,
  RELIMON_POINT_IN_CONTROL = 0,
  RELIMON_POINT_ABOVE_UCL = 1
} relimon_point_status;

typedef enum relimon_verdict {
  RELIMON_VERDICT_IN_CONTROL = 0,
  RELIMON_VERDICT_OUT_OF_CONTROL = 1
} relimon_verdict;

/* Opaque handles. */
typedef struct relimon_series relimon_series;
typedef struct relimon_grouped relimon_grouped;
typedef struct relimon_fit relimon_fit;
typedef struct relimon_chart relimon_chart;

RELIMON_API const char* relimon_version(void);

/* Message for the most recent failing call on this thread. */
RELIMON_API const char* relimon_last_error(void);

RELIMON_API void relimon_string_free(char* text);

/* ---- failure series ---- */

RELIMON_API relimon_status relimon_series_parse(const char* text, relimon_format format,
                                                const char* source_label, relimon_series** out);
RELIMON_API relimon_status relimon_series_from_deltas(const double* deltas, size_t count,
                                                      const char* source_label,
                                                      relimon_series** out);
/* The bundled 136-point Musa (1975) dataset. */
RELIMON_API relimon_status relimon_series_musa(relimon_series** out);
RELIMON_API size_t relimon_series_count(const relimon_series* series);
RELIMON_API double relimon_series_total(const relimon_series* series);
RELIMON_API const char* relimon_series_label(const relimon_series* series);
/* Copies the deltas into buffer (buffer_len must be >= count). */
RELIMON_API relimon_status relimon_series_values(const relimon_series* series, double* buffer,
                                                 size_t buffer_len);
RELIMON_API relimon_status relimon_series_serialize(const relimon_series* series,
                                                    relimon_format format, char** out_text);
RELIMON_API void relimon_series_free(relimon_series* series);

/* ---- grouping ---- */

RELIMON_API relimon_status relimon_group(const relimon_series* series, int order_r,
                                         relimon_grouped** out);
RELIMON_API int relimon_grouped_order(const relimon_grouped* grouped);
RELIMON_API size_t relimon_grouped_count(const relimon_grouped* grouped);
RELIMON_API size_t relimon_grouped_dropped_tail(const relimon_grouped* grouped);
RELIMON_API relimon_status relimon_grouped_times(const relimon_grouped* grouped, double* buffer,
                                                 size_t buffer_len);
RELIMON_API void relimon_grouped_free(relimon_grouped* grouped);

/* ---- model evaluation ---- */

RELIMON_API relimon_status relimon_mean_value(double a, double b, double t, double* out);
RELIMON_API relimon_status relimon_ordered_mean_value(double a, double b, int order_r, double t,
                                                      double* out);
RELIMON_API relimon_status relimon_intensity(double a, double b, int order_r, double t,
                                             double* out);

/* ---- maximum likelihood ---- */

RELIMON_API relimon_status relimon_log_likelihood(const relimon_grouped* grouped, double a,
                                                  double b, double* out);
RELIMON_API relimon_status relimon_a_given_b(const relimon_grouped* grouped, double b,
                                             double* out);
RELIMON_API relimon_status relimon_profile_score(const relimon_grouped* grouped, double b,
                                                 double* out);

typedef struct relimon_fit_options {
  double bracket_lo;    /* 0 = auto (1e-6 / s_n) */
  double bracket_hi;    /* 0 = auto (50 / s_n)   */
  double tol_step_rel;  /* default 1e-12 */
  double tol_score_rel; /* default 1e-9  */
  int max_iterations;   /* default 100   */
  int scan_points;      /* default 256   */
} relimon_fit_options;

RELIMON_API void relimon_fit_options_init(relimon_fit_options* options);

typedef struct relimon_fit_info {
  double a;
  double b;
  int order_r;
  size_t n_groups;
  int iterations;
  int converged;
  double residual;
  double log_lik;
  double bracket_lo;
  double bracket_hi;
  int root_count;
} relimon_fit_info;

/* options may be NULL for defaults. Fails with RELIMON_ERR_NO_ROOT when the
 * profile score has no sign change in the bracket; an exhausted iteration cap
 * still returns a fit with converged == 0. */
RELIMON_API relimon_status relimon_fit_run(const relimon_grouped* grouped,
                                           const relimon_fit_options* options,
                                           relimon_fit** out);
RELIMON_API relimon_status relimon_fit_summary(const relimon_fit* fit, relimon_fit_info* out);
RELIMON_API relimon_status relimon_fit_to_json(const relimon_fit* fit, char** out_text);
RELIMON_API void relimon_fit_free(relimon_fit* fit);

/* ---- control limits and charts ---- */

typedef struct relimon_limits {
  double p_low, p_center, p_high;
  double t_low, t_center, t_high;
  double m_low, m_center, m_high;
} relimon_limits;

RELIMON_API relimon_status relimon_control_limits(double a, double b, int order_r,
                                                  relimon_limits* out);
RELIMON_API relimon_status relimon_limits_to_json(double a, double b, int order_r,
                                                  char** out_text);

typedef struct relimon_chart_point {
  int index;
  double time;
  double m;
  double diff;
  relimon_point_status status;
} relimon_chart_point;

/* Builds the chart for the grouped series under parameters (a, b) with the
 * series' own order; limits are derived from the same model. */
RELIMON_API relimon_status relimon_chart_build(const relimon_grouped* grouped, double a, double b,
                                               relimon_mscale m_scale, relimon_chart** out);
RELIMON_API size_t relimon_chart_point_count(const relimon_chart* chart);
RELIMON_API relimon_status relimon_chart_get_point(const relimon_chart* chart, size_t index,
                                                   relimon_chart_point* out);
RELIMON_API relimon_verdict relimon_chart_verdict(const relimon_chart* chart);
RELIMON_API size_t relimon_chart_alarm_count(const relimon_chart* chart);
RELIMON_API relimon_status relimon_chart_alarms(const relimon_chart* chart, int* buffer,
                                                size_t buffer_len);
RELIMON_API relimon_status relimon_chart_limits(const relimon_chart* chart, relimon_limits* out);
RELIMON_API relimon_status relimon_chart_to_csv(const relimon_chart* chart, char** out_text);
RELIMON_API relimon_status relimon_chart_to_json(const relimon_chart* chart, char** out_text);
RELIMON_API relimon_status relimon_chart_to_svg(const relimon_chart* chart, int log_y,
                                                const char* title, char** out_text);
RELIMON_API relimon_status relimon_detect_to_json(const relimon_chart* chart, char** out_text);
RELIMON_API void relimon_chart_free(relimon_chart* chart);

/* Full run report (input digest + fit + limits + chart + verdict). fit may be
 * NULL when the chart was built from explicitly given parameters. */
RELIMON_API relimon_status relimon_report_to_json(const relimon_series* series,
                                                  const relimon_fit* fit,
                                                  const relimon_chart* chart, char** out_text);

/* ---- simulation ---- */

/* NHPP sample path under m(t) = a(1-e^{-bt}) by inversion; deterministic per
 * (seed, replication). max_failures of 0 means unbounded. May produce an
 * empty series for very small horizons. */
RELIMON_API relimon_status relimon_simulate(double a, double b, double horizon,
                                            uint64_t max_failures, uint64_t seed,
                                            uint32_t replication, relimon_series** out);

#ifdef __cplusplus
}
#endif

#endif /* RELIMON_H */
