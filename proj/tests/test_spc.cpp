#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "relimon/error.hpp"
#include "relimon/failure_data.hpp"
#include "relimon/render.hpp"
#include "relimon/spc.hpp"
#include "support/golden_musa.hpp"

using namespace relimon;

namespace {

OrderedGoModel ref_model(int r) {
  if (r == 4) return {{golden::kRefA4, golden::kRefB4}, 4};
  return {{golden::kRefA5, golden::kRefB5}, 5};
}

MeanValueChart ref_chart(int r) {
  const auto g = group_by_order(musa_fixture(), r);
  const auto model = ref_model(r);
  return build_chart(g, model, control_limits(model));
}

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

}  // namespace

TEST_SUITE_BEGIN("spc");

TEST_CASE("control limits for the r=4 reference model") {
  const auto limits = control_limits(ref_model(4));
  CHECK(std::abs(limits.m_low - 0.045929) < 1e-3);
  CHECK(std::abs(limits.m_center - 17.0107) < 1e-3);
  CHECK(std::abs(limits.m_high - 33.9756) < 1e-3);
  CHECK(limits.t_low < limits.t_center);
  CHECK(limits.t_center < limits.t_high);
  CHECK(limits.m_low < limits.m_center);
  CHECK(limits.m_center < limits.m_high);

  // exact by construction
  const double ar = num::ipow(golden::kRefA4, 4);
  CHECK(limits.m_low == ar * 0.00135);
  CHECK(limits.m_center == ar * 0.5);
  CHECK(limits.m_high == ar * 0.99865);
  CHECK(limits.m_low / limits.m_high == doctest::Approx(0.00135 / 0.99865).epsilon(1e-15));
}

TEST_CASE("control limits r=1 center is the exponential median time") {
  const OrderedGoModel model{{3.0, 0.02}, 1};
  const auto limits = control_limits(model);
  CHECK(limits.t_center == doctest::Approx(std::log(2.0) / 0.02).epsilon(1e-12));
}

TEST_CASE("chart on musa r=4 matches the published rows") {
  const auto chart = ref_chart(4);
  REQUIRE(chart.points.size() == 33);
  const auto& first = chart.points.front();
  CHECK(first.index == 1);
  CHECK(first.time == 227.0);
  CHECK(std::abs(first.m_value - 0.053669607) < 1e-5);
  CHECK(std::abs(first.diff - 0.050189929) < 1e-5);
  CHECK(first.status == PointStatus::in_control);

  CHECK(chart.verdict == Verdict::out_of_control);
  const std::vector<int> expect(golden::kAlarms4.begin(), golden::kAlarms4.end());
  CHECK(chart.alarm_indices == expect);
}

TEST_CASE("chart on musa r=5 matches the published rows") {
  const auto chart = ref_chart(5);
  REQUIRE(chart.points.size() == 26);
  CHECK(std::abs(chart.points.front().m_value - 0.073925386) < 1e-5);
  CHECK(std::abs(chart.points.front().diff - 0.04791294) < 1e-5);
  const std::vector<int> expect(golden::kAlarms5.begin(), golden::kAlarms5.end());
  CHECK(chart.alarm_indices == expect);
  CHECK(chart.verdict == Verdict::out_of_control);
}

TEST_CASE("order mismatch is rejected") {
  const auto g = group_by_order(musa_fixture(), 4);
  const auto model = ref_model(5);
  CHECK_THROWS_AS(build_chart(g, model, control_limits(model)), Error);
}

TEST_CASE("ordered m-scale equals base at r=1 and powers it otherwise") {
  FailureSeries series;
  series.deltas = {100.0, 350.0, 80.0, 1200.0};
  const auto g1 = group_by_order(series, 1);
  const OrderedGoModel m1{{4.0, 1e-3}, 1};
  const auto base = build_chart(g1, m1, control_limits(m1), MScale::base);
  const auto ordered = build_chart(g1, m1, control_limits(m1), MScale::ordered);
  REQUIRE(base.points.size() == ordered.points.size());
  for (std::size_t i = 0; i < base.points.size(); ++i) {
    CHECK(base.points[i].m_value == ordered.points[i].m_value);
    CHECK(base.points[i].diff == ordered.points[i].diff);
  }

  const auto g2 = group_by_order(series, 2);
  const OrderedGoModel m2{{4.0, 1e-3}, 2};
  const auto powered = build_chart(g2, m2, control_limits(m2), MScale::ordered);
  for (const auto& p : powered.points) {
    const double base_m = mean_value(m2.params, p.time);
    CHECK(p.m_value == doctest::Approx(base_m * base_m).epsilon(1e-14));
  }
}

TEST_CASE("a zero diff lands below the LCL") {
  // interior tied group (a zero-sum subgroup): the diff is exactly zero
  FailureSeries series;
  series.deltas = {5.0, 0.0, 3.0};
  const auto g = group_by_order(series, 1);
  const OrderedGoModel model{{2.0, 0.05}, 1};
  const auto chart = build_chart(g, model, control_limits(model));
  REQUIRE(chart.points.size() == 2);
  CHECK(chart.points[0].diff == 0.0);
  CHECK(chart.points[0].status == PointStatus::below_lcl);
  CHECK(chart.verdict == Verdict::out_of_control);
}

TEST_CASE("diffs beyond the UCL are better-quality signals, not alarms") {
  // ordered scale: one jump across nearly the whole a^r span exceeds the UCL
  FailureSeries series;
  series.deltas = {1.0, 100000.0};
  const auto g = group_by_order(series, 1);
  const OrderedGoModel model{{2.0, 1e-4}, 1};
  const auto chart = build_chart(g, model, control_limits(model), MScale::ordered);
  REQUIRE(chart.points.size() == 1);
  CHECK(chart.points[0].status == PointStatus::above_ucl);
  CHECK(chart.verdict == Verdict::in_control);

  const auto report = detect(chart);
  CHECK(report.verdict == Verdict::in_control);
  CHECK(report.alarms.empty());
  CHECK(report.above_ucl == std::vector<int>{1});
}

TEST_CASE("a diff exactly on the center line is in control") {
  // two groups engineered so the single diff equals m_center exactly
  const OrderedGoModel model{{2.0, 1e-3}, 1};
  const auto limits = control_limits(model);
  const double t1 = -std::log1p(-0.3 / 2.0) / 1e-3;
  const double t2 = -std::log1p(-(0.3 + limits.m_center) / 2.0) / 1e-3;
  FailureSeries series;
  series.deltas = {t1, t2 - t1};
  const auto chart = build_chart(group_by_order(series, 1), model, limits);
  REQUIRE(chart.points.size() == 1);
  CHECK(chart.points[0].diff == doctest::Approx(limits.m_center).epsilon(1e-12));
  CHECK(chart.points[0].status == PointStatus::in_control);
  CHECK(chart.verdict == Verdict::in_control);
  CHECK(detect(chart).alarms.empty());
}

TEST_CASE("telescoping: diffs sum to m(s_n) - m(s_1)") {
  for (const int r : {4, 5}) {
    const auto g = group_by_order(musa_fixture(), r);
    const auto chart = ref_chart(r);
    double sum = 0.0;
    for (const auto& p : chart.points) sum += p.diff;
    const auto model = ref_model(r);
    const double expect =
        mean_value(model.params, g.cum_times.back()) - mean_value(model.params, g.cum_times.front());
    CHECK(std::abs(sum - expect) <= 1e-12 * std::abs(expect));
  }
}

TEST_CASE("time rescaling leaves the chart invariant") {
  const auto base = ref_chart(4);
  const auto musa = musa_fixture();
  for (const double c : {3.5, 1000.0, 1.0 / 86400.0}) {
    FailureSeries scaled;
    for (const double d : musa.deltas) scaled.deltas.push_back(d * c);
    const OrderedGoModel model{{golden::kRefA4, golden::kRefB4 / c}, 4};
    const auto chart = build_chart(group_by_order(scaled, 4), model, control_limits(model));
    REQUIRE(chart.points.size() == base.points.size());
    CHECK(chart.limits.m_low == base.limits.m_low);
    for (std::size_t i = 0; i < base.points.size(); ++i) {
      CHECK(std::abs(chart.points[i].m_value - base.points[i].m_value) <=
            1e-9 * std::abs(base.points[i].m_value));
      CHECK(std::abs(chart.points[i].diff - base.points[i].diff) <=
            1e-9 * std::abs(base.points[i].diff) + 1e-300);
      CHECK(chart.points[i].status == base.points[i].status);
    }
    CHECK(chart.alarm_indices == base.alarm_indices);
  }
}

TEST_CASE("detect is idempotent and sorted") {
  const auto chart = ref_chart(4);
  const auto first = detect(chart);
  const auto second = detect(chart);
  CHECK(first.alarms == second.alarms);
  CHECK(first.above_ucl == second.above_ucl);
  CHECK(first.verdict == second.verdict);
  CHECK(std::is_sorted(first.alarms.begin(), first.alarms.end()));
  CHECK(first.point_count == 33);
}

TEST_CASE("chart CSV mirrors the published table layout") {
  const auto csv = chart_csv(ref_chart(4));
  CHECK(csv.rfind("index,time,m,diff,status\n", 0) == 0);
  const auto second_line = csv.substr(csv.find('\n') + 1);
  CHECK(second_line.rfind("1,227.000000000,0.053669607,0.050189929,in_control\n", 0) == 0);
  CHECK(count_occurrences(csv, "\n") == 34);  // header + 33 points
  CHECK(csv.find(" \n") == std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("chart JSON carries the documented fields") {
  const auto json = chart_json(ref_chart(4));
  CHECK(json.contains("model"));
  CHECK(json.contains("limits"));
  CHECK(json.contains("points"));
  CHECK(json.contains("verdict"));
  CHECK(json.contains("alarms"));
  CHECK(json["model"]["r"] == 4);
  CHECK(json["points"].size() == 33);
  CHECK(json["points"][0]["index"] == 1);
  CHECK(json["verdict"] == "out_of_control");
  CHECK(json["alarms"].size() == golden::kAlarms4.size());
  CHECK(json["limits"]["p_low"] == 0.00135);
}

TEST_CASE("SVG output is deterministic and labeled") {
  const auto chart = ref_chart(4);
  const auto svg = chart_svg(chart, true, "Mean value chart (r=4, musa)");
  CHECK(svg == chart_svg(chart, true, "Mean value chart (r=4, musa)"));
  CHECK(count_occurrences(svg, ">LCL<") == 1);
  CHECK(count_occurrences(svg, ">CL<") == 1);
  CHECK(count_occurrences(svg, ">UCL<") == 1);
  CHECK(count_occurrences(svg, "<circle") == 33);
  CHECK(svg.rfind("<svg", 0) == 0);

  const auto linear = chart_svg(chart, false, "Mean value chart (r=4, musa)");
  CHECK(linear != svg);
  CHECK(count_occurrences(linear, "<circle") == 33);
}

TEST_SUITE_END();
