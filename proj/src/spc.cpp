#include "relimon/spc.hpp"

#include <cmath>

#include "relimon/error.hpp"

namespace relimon {

ControlLimits control_limits(const OrderedGoModel& model) {
  validate(model);
  const double b = model.params.b;
  const int r = model.order_r;
  const double ar = num::ipow(model.params.a, r);

  ControlLimits limits;
  // 1 - p^{1/r} = -expm1(ln(p)/r), stable when p^{1/r} is close to 1.
  const auto t_at = [&](double p) { return -std::log(-std::expm1(std::log(p) / r)) / b; };
  limits.t_low = t_at(limits.p_low);
  limits.t_center = t_at(limits.p_center);
  limits.t_high = t_at(limits.p_high);
  limits.m_low = ar * limits.p_low;
  limits.m_center = ar * limits.p_center;
  limits.m_high = ar * limits.p_high;
  return limits;
}

MeanValueChart build_chart(const GroupedSeries& g, const OrderedGoModel& model,
                           const ControlLimits& limits, MScale m_scale) {
  validate(g);
  validate(model);
  if (model.order_r != g.order_r)
    raise(ErrorCode::invalid_argument, "model order does not match grouped series order");
  if (g.cum_times.size() < 2)
    raise(ErrorCode::invalid_argument, "chart requires at least 2 subgroups");

  MeanValueChart chart;
  chart.limits = limits;
  chart.model = model;
  chart.m_scale = m_scale;

  const std::size_t n = g.cum_times.size();
  std::vector<double> m(n);
  for (std::size_t k = 0; k < n; ++k)
    m[k] = m_scale == MScale::base ? mean_value(model.params, g.cum_times[k])
                                   : ordered_mean_value(model, g.cum_times[k]);

  chart.points.reserve(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    ChartPoint point;
    point.index = static_cast<int>(k + 1);
    point.time = g.cum_times[k];
    point.m_value = m[k];
    point.diff = m[k + 1] - m[k];
    if (point.diff < limits.m_low)
      point.status = PointStatus::below_lcl;
    else if (point.diff > limits.m_high)
      point.status = PointStatus::above_ucl;
    else
      point.status = PointStatus::in_control;
    if (point.status == PointStatus::below_lcl) chart.alarm_indices.push_back(point.index);
    chart.points.push_back(point);
  }
  chart.verdict = chart.alarm_indices.empty() ? Verdict::in_control : Verdict::out_of_control;
  return chart;
}

DetectReport detect(const MeanValueChart& chart) {
  DetectReport report;
  report.point_count = chart.points.size();
  for (const auto& point : chart.points) {
    if (point.status == PointStatus::below_lcl) report.alarms.push_back(point.index);
    if (point.status == PointStatus::above_ucl) report.above_ucl.push_back(point.index);
  }
  report.verdict = report.alarms.empty() ? Verdict::in_control : Verdict::out_of_control;
  return report;
}

const char* to_string(PointStatus status) {
  switch (status) {
    case PointStatus::below_lcl: return "below_lcl";
    case PointStatus::above_ucl: return "above_ucl";
    default: return "in_control";
  }
}

const char* to_string(Verdict verdict) {
  return verdict == Verdict::out_of_control ? "out_of_control" : "in_control";
}

}  // namespace relimon
