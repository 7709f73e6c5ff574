#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "relimon.h"
#include "support/golden_musa.hpp"

namespace {

std::string take_string(char* text) {
  REQUIRE(text != nullptr);
  std::string out = text;
  relimon_string_free(text);
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("capi");

TEST_CASE("version and error message plumbing") {
  CHECK(std::strcmp(relimon_version(), "0.1.0") == 0);
  CHECK(relimon_series_parse(nullptr, RELIMON_FORMAT_PLAIN, nullptr, nullptr) ==
        RELIMON_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(relimon_last_error()) > 0);
}

TEST_CASE("series lifecycle through the C surface") {
  relimon_series* series = nullptr;
  REQUIRE(relimon_series_musa(&series) == RELIMON_OK);
  CHECK(relimon_series_count(series) == 136);
  CHECK(relimon_series_total(series) == 88682.0);
  CHECK(std::string(relimon_series_label(series)) == "musa");

  std::vector<double> values(136);
  REQUIRE(relimon_series_values(series, values.data(), values.size()) == RELIMON_OK);
  CHECK(values[0] == 3.0);
  CHECK(values[135] == 4116.0);
  CHECK(relimon_series_values(series, values.data(), 10) == RELIMON_ERR_INVALID_ARGUMENT);

  char* text = nullptr;
  REQUIRE(relimon_series_serialize(series, RELIMON_FORMAT_PLAIN, &text) == RELIMON_OK);
  const std::string serialized = take_string(text);
  CHECK(serialized.rfind("3\n30\n113\n", 0) == 0);

  relimon_series* reparsed = nullptr;
  REQUIRE(relimon_series_parse(serialized.c_str(), RELIMON_FORMAT_PLAIN, "copy", &reparsed) ==
          RELIMON_OK);
  CHECK(relimon_series_count(reparsed) == 136);
  relimon_series_free(reparsed);
  relimon_series_free(series);
}

TEST_CASE("parse failures set a status and message") {
  relimon_series* series = nullptr;
  CHECK(relimon_series_parse("-3\n", RELIMON_FORMAT_PLAIN, nullptr, &series) ==
        RELIMON_ERR_PARSE);
  CHECK(std::string(relimon_last_error()).find("line 1") != std::string::npos);
  CHECK(series == nullptr);
}

TEST_CASE("grouping and estimation through the C surface") {
  relimon_series* series = nullptr;
  REQUIRE(relimon_series_musa(&series) == RELIMON_OK);
  relimon_grouped* grouped = nullptr;
  REQUIRE(relimon_group(series, 4, &grouped) == RELIMON_OK);
  CHECK(relimon_grouped_order(grouped) == 4);
  CHECK(relimon_grouped_count(grouped) == 34);
  CHECK(relimon_grouped_dropped_tail(grouped) == 0);

  std::vector<double> times(34);
  REQUIRE(relimon_grouped_times(grouped, times.data(), times.size()) == RELIMON_OK);
  CHECK(times[0] == 227.0);
  CHECK(times[33] == 88682.0);

  double value = 0.0;
  REQUIRE(relimon_mean_value(golden::kRefA4, golden::kRefB4, 227.0, &value) == RELIMON_OK);
  CHECK(std::abs(value - 0.053669607) < 1e-6);
  REQUIRE(relimon_a_given_b(grouped, golden::kRefB4, &value) == RELIMON_OK);
  CHECK(std::abs(value - 2.41513) < 5e-4);
  REQUIRE(relimon_profile_score(grouped, golden::kFitB4, &value) == RELIMON_OK);
  CHECK(std::abs(value) < 1.0);
  REQUIRE(relimon_log_likelihood(grouped, golden::kFitA4, golden::kFitB4, &value) == RELIMON_OK);
  CHECK(std::isfinite(value));
  CHECK(relimon_mean_value(-1.0, 1.0, 1.0, &value) == RELIMON_ERR_INVALID_ARGUMENT);

  relimon_fit_options options;
  relimon_fit_options_init(&options);
  CHECK(options.max_iterations == 100);
  CHECK(options.scan_points == 256);

  relimon_fit* fit = nullptr;
  REQUIRE(relimon_fit_run(grouped, &options, &fit) == RELIMON_OK);
  relimon_fit_info info;
  REQUIRE(relimon_fit_summary(fit, &info) == RELIMON_OK);
  CHECK(info.converged == 1);
  CHECK(info.order_r == 4);
  CHECK(info.n_groups == 34);
  CHECK(std::abs(info.b - golden::kFitB4) <= 1e-7 * golden::kFitB4);
  CHECK(std::abs(info.a - golden::kFitA4) <= 1e-7 * golden::kFitA4);

  char* fit_text = nullptr;
  REQUIRE(relimon_fit_to_json(fit, &fit_text) == RELIMON_OK);
  const auto fit_doc = nlohmann::json::parse(take_string(fit_text));
  CHECK(fit_doc["r"] == 4);
  CHECK(fit_doc["converged"] == true);

  relimon_fit_free(fit);
  relimon_grouped_free(grouped);
  relimon_series_free(series);
}

TEST_CASE("no-root data is reported through the status code") {
  const std::vector<double> uniform(10, 1.0);
  relimon_series* series = nullptr;
  REQUIRE(relimon_series_from_deltas(uniform.data(), uniform.size(), "uniform", &series) ==
          RELIMON_OK);
  relimon_grouped* grouped = nullptr;
  REQUIRE(relimon_group(series, 1, &grouped) == RELIMON_OK);
  relimon_fit* fit = nullptr;
  CHECK(relimon_fit_run(grouped, nullptr, &fit) == RELIMON_ERR_NO_ROOT);
  CHECK(fit == nullptr);
  relimon_grouped_free(grouped);
  relimon_series_free(series);
}

TEST_CASE("limits, chart, detect and report through the C surface") {
  relimon_limits limits;
  REQUIRE(relimon_control_limits(golden::kRefA4, golden::kRefB4, 4, &limits) == RELIMON_OK);
  CHECK(std::abs(limits.m_low - 0.045929) < 1e-3);
  CHECK(limits.p_center == 0.5);

  relimon_series* series = nullptr;
  REQUIRE(relimon_series_musa(&series) == RELIMON_OK);
  relimon_grouped* grouped = nullptr;
  REQUIRE(relimon_group(series, 4, &grouped) == RELIMON_OK);

  relimon_chart* chart = nullptr;
  REQUIRE(relimon_chart_build(grouped, golden::kRefA4, golden::kRefB4, RELIMON_MSCALE_BASE,
                              &chart) == RELIMON_OK);
  CHECK(relimon_chart_point_count(chart) == 33);
  CHECK(relimon_chart_verdict(chart) == RELIMON_VERDICT_OUT_OF_CONTROL);
  REQUIRE(relimon_chart_alarm_count(chart) == golden::kAlarms4.size());
  std::vector<int> alarms(golden::kAlarms4.size());
  REQUIRE(relimon_chart_alarms(chart, alarms.data(), alarms.size()) == RELIMON_OK);
  for (std::size_t i = 0; i < alarms.size(); ++i) CHECK(alarms[i] == golden::kAlarms4[i]);

  relimon_chart_point point;
  REQUIRE(relimon_chart_get_point(chart, 0, &point) == RELIMON_OK);
  CHECK(point.index == 1);
  CHECK(point.time == 227.0);
  CHECK(point.status == RELIMON_POINT_IN_CONTROL);
  CHECK(relimon_chart_get_point(chart, 999, &point) == RELIMON_ERR_INVALID_ARGUMENT);

  relimon_limits chart_limits;
  REQUIRE(relimon_chart_limits(chart, &chart_limits) == RELIMON_OK);
  CHECK(chart_limits.m_high == limits.m_high);

  char* csv = nullptr;
  REQUIRE(relimon_chart_to_csv(chart, &csv) == RELIMON_OK);
  CHECK(take_string(csv).rfind("index,time,m,diff,status\n", 0) == 0);

  char* chart_text = nullptr;
  REQUIRE(relimon_chart_to_json(chart, &chart_text) == RELIMON_OK);
  const auto chart_doc = nlohmann::json::parse(take_string(chart_text));
  CHECK(chart_doc["verdict"] == "out_of_control");

  char* detect_text = nullptr;
  REQUIRE(relimon_detect_to_json(chart, &detect_text) == RELIMON_OK);
  const auto detect_doc = nlohmann::json::parse(take_string(detect_text));
  CHECK(detect_doc["alarm_count"] == golden::kAlarms4.size());

  char* svg = nullptr;
  REQUIRE(relimon_chart_to_svg(chart, 1, "chart", &svg) == RELIMON_OK);
  CHECK(take_string(svg).rfind("<svg", 0) == 0);

  relimon_fit* fit = nullptr;
  REQUIRE(relimon_fit_run(grouped, nullptr, &fit) == RELIMON_OK);
  char* report = nullptr;
  REQUIRE(relimon_report_to_json(series, fit, chart, &report) == RELIMON_OK);
  const auto report_doc = nlohmann::json::parse(take_string(report));
  CHECK(report_doc["input"]["count"] == 136);
  CHECK(report_doc["input"]["sum"] == 88682.0);
  CHECK(report_doc["order_r"] == 4);
  CHECK(report_doc["version"] == "0.1.0");
  CHECK(report_doc["chart"]["points"].size() == 33);

  // known-parameters report carries fit: null
  char* bare = nullptr;
  REQUIRE(relimon_report_to_json(series, nullptr, chart, &bare) == RELIMON_OK);
  CHECK(nlohmann::json::parse(take_string(bare))["fit"].is_null());

  relimon_fit_free(fit);
  relimon_chart_free(chart);
  relimon_grouped_free(grouped);
  relimon_series_free(series);
}

TEST_CASE("simulation through the C surface is deterministic") {
  relimon_series* first = nullptr;
  relimon_series* second = nullptr;
  REQUIRE(relimon_simulate(25.0, 1e-4, 16094.379, 0, 42, 0, &first) == RELIMON_OK);
  REQUIRE(relimon_simulate(25.0, 1e-4, 16094.379, 0, 42, 0, &second) == RELIMON_OK);
  REQUIRE(relimon_series_count(first) == relimon_series_count(second));
  std::vector<double> a(relimon_series_count(first));
  std::vector<double> b(relimon_series_count(second));
  REQUIRE(relimon_series_values(first, a.data(), a.size()) == RELIMON_OK);
  REQUIRE(relimon_series_values(second, b.data(), b.size()) == RELIMON_OK);
  CHECK(a == b);
  CHECK(relimon_simulate(25.0, 1e-4, -1.0, 0, 1, 0, &first) == RELIMON_ERR_INVALID_ARGUMENT);
  relimon_series_free(first);
  relimon_series_free(second);
}

TEST_SUITE_END();
