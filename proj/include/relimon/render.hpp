#pragma once

#include <string>

#include "json.hpp"
#include "relimon/mle.hpp"
#include "relimon/spc.hpp"

namespace relimon {

/// Summary of the analyzed input carried into reports.
struct InputDigest {
  std::size_t count = 0;
  double sum = 0.0;
  std::string source_label;
};

inline constexpr const char* kVersion = "0.1.0";

/// CSV with header "index,time,m,diff,status"; numeric columns printed with
/// 9 decimal places; LF endings.
std::string chart_csv(const MeanValueChart& chart);

nlohmann::ordered_json fit_json(const FitResult& fit);
nlohmann::ordered_json limits_json(const OrderedGoModel& model, const ControlLimits& limits);
nlohmann::ordered_json chart_json(const MeanValueChart& chart);
nlohmann::ordered_json detect_json(const DetectReport& report);

/// Full run report: input digest, order, fit summary, limits, embedded chart,
/// tool version. Byte-stable for identical inputs and flags. fit may be null
/// when the chart was built from explicitly given parameters.
nlohmann::ordered_json report_json(const InputDigest& input, const FitResult* fit,
                                   const MeanValueChart& chart);

/// Deterministic standalone SVG: the n-1 successive-difference points against
/// three horizontal limit lines labeled LCL/CL/UCL. log_y selects a log10
/// y-axis (zero diffs are clamped to the axis floor).
std::string chart_svg(const MeanValueChart& chart, bool log_y, const std::string& title);

}  // namespace relimon
