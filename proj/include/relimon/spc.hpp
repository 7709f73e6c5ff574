#pragma once

#include <cstddef>
#include <vector>

#include "relimon/failure_data.hpp"
#include "relimon/go_model.hpp"

namespace relimon {

/// Probability-based control limits. The m-levels satisfy m_p = a^r * p
/// exactly by construction; t_p = -(1/b) ln(1 - p^{1/r}) is the time where
/// the grouped mean value reaches that level.
struct ControlLimits {
  double p_low = 0.00135;
  double p_center = 0.5;
  double p_high = 0.99865;
  double t_low = 0.0;
  double t_center = 0.0;
  double t_high = 0.0;
  double m_low = 0.0;
  double m_center = 0.0;
  double m_high = 0.0;
};

enum class PointStatus { below_lcl, in_control, above_ucl };
enum class Verdict { in_control, out_of_control };

/// m-scale for the plotted values: base uses a(1-e^{-b s_k}) (faithful to
/// published charts, where only below-LCL signals are reachable); ordered
/// uses [a(1-e^{-b s_k})]^r, the same scale the limits live on.
enum class MScale { base, ordered };

/// One chart point: row k pairs m(s_k) with the forward difference
/// m(s_{k+1}) - m(s_k), so a chart over n groups has n-1 points.
struct ChartPoint {
  int index = 0;  ///< 1-based, 1..n-1
  double time = 0.0;
  double m_value = 0.0;
  double diff = 0.0;
  PointStatus status = PointStatus::in_control;
};

struct MeanValueChart {
  std::vector<ChartPoint> points;
  ControlLimits limits;
  OrderedGoModel model;
  MScale m_scale = MScale::base;
  Verdict verdict = Verdict::in_control;
  std::vector<int> alarm_indices;  ///< indices of below-LCL points
};

ControlLimits control_limits(const OrderedGoModel& model);

/// Statuses use strict inequalities: a diff exactly on a limit is in control.
/// The verdict is out_of_control iff some point falls below the LCL.
MeanValueChart build_chart(const GroupedSeries& g, const OrderedGoModel& model,
                           const ControlLimits& limits, MScale m_scale = MScale::base);

struct DetectReport {
  Verdict verdict = Verdict::in_control;
  std::vector<int> alarms;     ///< below-LCL point indices (the alarms)
  std::vector<int> above_ucl;  ///< better-quality signals, reported separately
  std::size_t point_count = 0;
};

DetectReport detect(const MeanValueChart& chart);

const char* to_string(PointStatus status);
const char* to_string(Verdict verdict);

}  // namespace relimon
