#include "relimon.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "relimon/error.hpp"
#include "relimon/failure_data.hpp"
#include "relimon/go_model.hpp"
#include "relimon/mle.hpp"
#include "relimon/render.hpp"
#include "relimon/simulate.hpp"
#include "relimon/spc.hpp"

struct relimon_series {
  relimon::FailureSeries value;
};
struct relimon_grouped {
  relimon::GroupedSeries value;
};
struct relimon_fit {
  relimon::FitResult value;
};
struct relimon_chart {
  relimon::MeanValueChart value;
};

namespace {

thread_local std::string g_last_error;

relimon_status to_status(relimon::ErrorCode code) {
  switch (code) {
    case relimon::ErrorCode::invalid_argument: return RELIMON_ERR_INVALID_ARGUMENT;
    case relimon::ErrorCode::parse_error: return RELIMON_ERR_PARSE;
    case relimon::ErrorCode::no_root: return RELIMON_ERR_NO_ROOT;
    case relimon::ErrorCode::no_convergence: return RELIMON_ERR_NO_CONVERGENCE;
    case relimon::ErrorCode::numeric_overflow: return RELIMON_ERR_OVERFLOW;
    case relimon::ErrorCode::io_error: return RELIMON_ERR_IO;
    default: return RELIMON_ERR_INTERNAL;
  }
}

relimon_status fail(relimon_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
relimon_status guarded(Fn&& fn) {
  try {
    fn();
    return RELIMON_OK;
  } catch (const relimon::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RELIMON_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RELIMON_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

relimon::SeriesFormat to_format(relimon_format format) {
  return format == RELIMON_FORMAT_CSV ? relimon::SeriesFormat::csv
                                      : relimon::SeriesFormat::plain;
}

relimon::OrderedGoModel make_model(double a, double b, int order_r) {
  relimon::OrderedGoModel model;
  model.params.a = a;
  model.params.b = b;
  model.order_r = order_r;
  relimon::validate(model);
  return model;
}

}  // namespace

extern "C" {

const char* relimon_version(void) { return relimon::kVersion; }

const char* relimon_last_error(void) { return g_last_error.c_str(); }

void relimon_string_free(char* text) { delete[] text; }

/* ---- failure series ---- */

relimon_status relimon_series_parse(const char* text, relimon_format format,
                                    const char* source_label, relimon_series** out) {
  if (text == nullptr || out == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "text and out must not be NULL");
  return guarded([&] {
    auto series = relimon::parse_failure_data(text, to_format(format),
                                              source_label != nullptr ? source_label : "");
    *out = new relimon_series{std::move(series)};
  });
}

relimon_status relimon_series_from_deltas(const double* deltas, size_t count,
                                          const char* source_label, relimon_series** out) {
  if (deltas == nullptr || out == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "deltas and out must not be NULL");
  return guarded([&] {
    relimon::FailureSeries series;
    series.deltas.assign(deltas, deltas + count);
    series.source_label = source_label != nullptr ? source_label : "";
    relimon::validate(series);
    *out = new relimon_series{std::move(series)};
  });
}

relimon_status relimon_series_musa(relimon_series** out) {
  if (out == nullptr) return fail(RELIMON_ERR_INVALID_ARGUMENT, "out must not be NULL");
  return guarded([&] { *out = new relimon_series{relimon::musa_fixture()}; });
}

size_t relimon_series_count(const relimon_series* series) {
  return series != nullptr ? series->value.deltas.size() : 0;
}

double relimon_series_total(const relimon_series* series) {
  if (series == nullptr) return 0.0;
  double total = 0.0;
  for (const double d : series->value.deltas) total += d;
  return total;
}

const char* relimon_series_label(const relimon_series* series) {
  return series != nullptr ? series->value.source_label.c_str() : "";
}

relimon_status relimon_series_values(const relimon_series* series, double* buffer,
                                     size_t buffer_len) {
  if (series == nullptr || buffer == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "series and buffer must not be NULL");
  if (buffer_len < series->value.deltas.size())
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "buffer too small");
  std::memcpy(buffer, series->value.deltas.data(),
              series->value.deltas.size() * sizeof(double));
  return RELIMON_OK;
}

relimon_status relimon_series_serialize(const relimon_series* series, relimon_format format,
                                        char** out_text) {
  if (series == nullptr || out_text == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "series and out_text must not be NULL");
  return guarded([&] {
    *out_text = copy_string(relimon::serialize_failure_data(series->value, to_format(format)));
  });
}

void relimon_series_free(relimon_series* series) { delete series; }

/* ---- grouping ---- */

relimon_status relimon_group(const relimon_series* series, int order_r, relimon_grouped** out) {
  if (series == nullptr || out == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "series and out must not be NULL");
  return guarded(
      [&] { *out = new relimon_grouped{relimon::group_by_order(series->value, order_r)}; });
}

int relimon_grouped_order(const relimon_grouped* grouped) {
  return grouped != nullptr ? grouped->value.order_r : 0;
}

size_t relimon_grouped_count(const relimon_grouped* grouped) {
  return grouped != nullptr ? grouped->value.n_groups : 0;
}

size_t relimon_grouped_dropped_tail(const relimon_grouped* grouped) {
  return grouped != nullptr ? grouped->value.dropped_tail : 0;
}

relimon_status relimon_grouped_times(const relimon_grouped* grouped, double* buffer,
                                     size_t buffer_len) {
  if (grouped == nullptr || buffer == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "grouped and buffer must not be NULL");
  if (buffer_len < grouped->value.cum_times.size())
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "buffer too small");
  std::memcpy(buffer, grouped->value.cum_times.data(),
              grouped->value.cum_times.size() * sizeof(double));
  return RELIMON_OK;
}

void relimon_grouped_free(relimon_grouped* grouped) { delete grouped; }

/* ---- model evaluation ---- */

relimon_status relimon_mean_value(double a, double b, double t, double* out) {
  if (out == nullptr) return fail(RELIMON_ERR_INVALID_ARGUMENT, "out must not be NULL");
  return guarded([&] { *out = relimon::mean_value({a, b}, t); });
}

relimon_status relimon_ordered_mean_value(double a, double b, int order_r, double t,
                                          double* out) {
  if (out == nullptr) return fail(RELIMON_ERR_INVALID_ARGUMENT, "out must not be NULL");
  return guarded([&] { *out = relimon::ordered_mean_value(make_model(a, b, order_r), t); });
}

relimon_status relimon_intensity(double a, double b, int order_r, double t, double* out) {
  if (out == nullptr) return fail(RELIMON_ERR_INVALID_ARGUMENT, "out must not be NULL");
  return guarded([&] { *out = relimon::intensity(make_model(a, b, order_r), t); });
}

/* ---- maximum likelihood ---- */

relimon_status relimon_log_likelihood(const relimon_grouped* grouped, double a, double b,
                                      double* out) {
  if (grouped == nullptr || out == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "grouped and out must not be NULL");
  return guarded([&] { *out = relimon::log_likelihood(grouped->value, a, b); });
}

relimon_status relimon_a_given_b(const relimon_grouped* grouped, double b, double* out) {
  if (grouped == nullptr || out == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "grouped and out must not be NULL");
  return guarded([&] { *out = relimon::a_given_b(grouped->value, b); });
}

relimon_status relimon_profile_score(const relimon_grouped* grouped, double b, double* out) {
  if (grouped == nullptr || out == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "grouped and out must not be NULL");
  return guarded([&] { *out = relimon::profile_score(grouped->value, b); });
}

void relimon_fit_options_init(relimon_fit_options* options) {
  if (options == nullptr) return;
  const relimon::FitOptions defaults;
  options->bracket_lo = defaults.bracket_lo;
  options->bracket_hi = defaults.bracket_hi;
  options->tol_step_rel = defaults.tol_step_rel;
  options->tol_score_rel = defaults.tol_score_rel;
  options->max_iterations = defaults.max_iterations;
  options->scan_points = defaults.scan_points;
}

relimon_status relimon_fit_run(const relimon_grouped* grouped,
                               const relimon_fit_options* options, relimon_fit** out) {
  if (grouped == nullptr || out == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "grouped and out must not be NULL");
  return guarded([&] {
    relimon::FitOptions opt;
    if (options != nullptr) {
      opt.bracket_lo = options->bracket_lo;
      opt.bracket_hi = options->bracket_hi;
      opt.tol_step_rel = options->tol_step_rel;
      opt.tol_score_rel = options->tol_score_rel;
      opt.max_iterations = options->max_iterations;
      opt.scan_points = options->scan_points;
    }
    *out = new relimon_fit{relimon::fit(grouped->value, opt)};
  });
}

relimon_status relimon_fit_summary(const relimon_fit* fit, relimon_fit_info* out) {
  if (fit == nullptr || out == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "fit and out must not be NULL");
  const auto& r = fit->value;
  out->a = r.model.params.a;
  out->b = r.model.params.b;
  out->order_r = r.model.order_r;
  out->n_groups = r.n_groups;
  out->iterations = r.iterations;
  out->converged = r.converged ? 1 : 0;
  out->residual = r.residual;
  out->log_lik = r.log_lik;
  out->bracket_lo = r.bracket_lo;
  out->bracket_hi = r.bracket_hi;
  out->root_count = r.root_count;
  return RELIMON_OK;
}

relimon_status relimon_fit_to_json(const relimon_fit* fit, char** out_text) {
  if (fit == nullptr || out_text == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "fit and out_text must not be NULL");
  return guarded([&] { *out_text = copy_string(relimon::fit_json(fit->value).dump(2)); });
}

void relimon_fit_free(relimon_fit* fit) { delete fit; }

/* ---- control limits and charts ---- */

namespace {

void fill_limits(const relimon::ControlLimits& limits, relimon_limits* out) {
  out->p_low = limits.p_low;
  out->p_center = limits.p_center;
  out->p_high = limits.p_high;
  out->t_low = limits.t_low;
  out->t_center = limits.t_center;
  out->t_high = limits.t_high;
  out->m_low = limits.m_low;
  out->m_center = limits.m_center;
  out->m_high = limits.m_high;
}

}  // namespace

relimon_status relimon_control_limits(double a, double b, int order_r, relimon_limits* out) {
  if (out == nullptr) return fail(RELIMON_ERR_INVALID_ARGUMENT, "out must not be NULL");
  return guarded([&] {
    fill_limits(relimon::control_limits(make_model(a, b, order_r)), out);
  });
}

relimon_status relimon_limits_to_json(double a, double b, int order_r, char** out_text) {
  if (out_text == nullptr) return fail(RELIMON_ERR_INVALID_ARGUMENT, "out_text must not be NULL");
  return guarded([&] {
    const auto model = make_model(a, b, order_r);
    *out_text =
        copy_string(relimon::limits_json(model, relimon::control_limits(model)).dump(2));
  });
}

relimon_status relimon_chart_build(const relimon_grouped* grouped, double a, double b,
                                   relimon_mscale m_scale, relimon_chart** out) {
  if (grouped == nullptr || out == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "grouped and out must not be NULL");
  return guarded([&] {
    const auto model = make_model(a, b, grouped->value.order_r);
    const auto limits = relimon::control_limits(model);
    const auto scale = m_scale == RELIMON_MSCALE_ORDERED ? relimon::MScale::ordered
                                                         : relimon::MScale::base;
    *out = new relimon_chart{relimon::build_chart(grouped->value, model, limits, scale)};
  });
}

size_t relimon_chart_point_count(const relimon_chart* chart) {
  return chart != nullptr ? chart->value.points.size() : 0;
}

relimon_status relimon_chart_get_point(const relimon_chart* chart, size_t index,
                                       relimon_chart_point* out) {
  if (chart == nullptr || out == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "chart and out must not be NULL");
  if (index >= chart->value.points.size())
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "point index out of range");
  const auto& p = chart->value.points[index];
  out->index = p.index;
  out->time = p.time;
  out->m = p.m_value;
  out->diff = p.diff;
  out->status = p.status == relimon::PointStatus::below_lcl
                    ? RELIMON_POINT_BELOW_LCL
                    : (p.status == relimon::PointStatus::above_ucl ? RELIMON_POINT_ABOVE_UCL
                                                                   : RELIMON_POINT_IN_CONTROL);
  return RELIMON_OK;
}

relimon_verdict relimon_chart_verdict(const relimon_chart* chart) {
  return chart != nullptr && chart->value.verdict == relimon::Verdict::out_of_control
             ? RELIMON_VERDICT_OUT_OF_CONTROL
             : RELIMON_VERDICT_IN_CONTROL;
}

size_t relimon_chart_alarm_count(const relimon_chart* chart) {
  return chart != nullptr ? chart->value.alarm_indices.size() : 0;
}

relimon_status relimon_chart_alarms(const relimon_chart* chart, int* buffer, size_t buffer_len) {
  if (chart == nullptr || buffer == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "chart and buffer must not be NULL");
  if (buffer_len < chart->value.alarm_indices.size())
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "buffer too small");
  std::memcpy(buffer, chart->value.alarm_indices.data(),
              chart->value.alarm_indices.size() * sizeof(int));
  return RELIMON_OK;
}

relimon_status relimon_chart_limits(const relimon_chart* chart, relimon_limits* out) {
  if (chart == nullptr || out == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "chart and out must not be NULL");
  fill_limits(chart->value.limits, out);
  return RELIMON_OK;
}

relimon_status relimon_chart_to_csv(const relimon_chart* chart, char** out_text) {
  if (chart == nullptr || out_text == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "chart and out_text must not be NULL");
  return guarded([&] { *out_text = copy_string(relimon::chart_csv(chart->value)); });
}

relimon_status relimon_chart_to_json(const relimon_chart* chart, char** out_text) {
  if (chart == nullptr || out_text == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "chart and out_text must not be NULL");
  return guarded([&] { *out_text = copy_string(relimon::chart_json(chart->value).dump(2)); });
}

relimon_status relimon_chart_to_svg(const relimon_chart* chart, int log_y, const char* title,
                                    char** out_text) {
  if (chart == nullptr || out_text == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "chart and out_text must not be NULL");
  return guarded([&] {
    *out_text = copy_string(relimon::chart_svg(
        chart->value, log_y != 0, title != nullptr ? title : "Mean value chart"));
  });
}

relimon_status relimon_detect_to_json(const relimon_chart* chart, char** out_text) {
  if (chart == nullptr || out_text == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "chart and out_text must not be NULL");
  return guarded([&] {
    *out_text = copy_string(relimon::detect_json(relimon::detect(chart->value)).dump(2));
  });
}

void relimon_chart_free(relimon_chart* chart) { delete chart; }

relimon_status relimon_report_to_json(const relimon_series* series, const relimon_fit* fit,
                                      const relimon_chart* chart, char** out_text) {
  if (series == nullptr || chart == nullptr || out_text == nullptr)
    return fail(RELIMON_ERR_INVALID_ARGUMENT, "series, chart and out_text must not be NULL");
  return guarded([&] {
    relimon::InputDigest digest;
    digest.count = series->value.deltas.size();
    digest.sum = relimon_series_total(series);
    digest.source_label = series->value.source_label;
    const relimon::FitResult* fit_value = fit != nullptr ? &fit->value : nullptr;
    *out_text = copy_string(relimon::report_json(digest, fit_value, chart->value).dump(2));
  });
}

/* ---- simulation ---- */

relimon_status relimon_simulate(double a, double b, double horizon, uint64_t max_failures,
                                uint64_t seed, uint32_t replication, relimon_series** out) {
  if (out == nullptr) return fail(RELIMON_ERR_INVALID_ARGUMENT, "out must not be NULL");
  return guarded([&] {
    relimon::SimConfig config;
    config.params.a = a;
    config.params.b = b;
    config.horizon = horizon;
    config.max_failures = max_failures;
    config.seed = seed;
    *out = new relimon_series{relimon::simulate_nhpp(config, replication)};
  });
}

}  // extern "C"
