#include "relimon/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace relimon {

namespace {

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

}  // namespace

std::string chart_csv(const MeanValueChart& chart) {
  std::string out = "index,time,m,diff,status\n";
  for (const auto& p : chart.points) {
    out += std::to_string(p.index);
    out += ',';
    out += fixed(p.time, 9);
    out += ',';
    out += fixed(p.m_value, 9);
    out += ',';
    out += fixed(p.diff, 9);
    out += ',';
    out += to_string(p.status);
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json fit_json(const FitResult& fit) {
  return nlohmann::ordered_json{
      {"a", fit.model.params.a},
      {"b", fit.model.params.b},
      {"r", fit.model.order_r},
      {"n", fit.n_groups},
      {"iterations", fit.iterations},
      {"converged", fit.converged},
      {"residual", fit.residual},
      {"log_lik", fit.log_lik},
      {"bracket", {fit.bracket_lo, fit.bracket_hi}},
      {"root_count", fit.root_count},
  };
}

namespace {

nlohmann::ordered_json limits_fields(const ControlLimits& limits) {
  return nlohmann::ordered_json{
      {"p_low", limits.p_low},       {"p_center", limits.p_center}, {"p_high", limits.p_high},
      {"t_low", limits.t_low},       {"t_center", limits.t_center}, {"t_high", limits.t_high},
      {"m_low", limits.m_low},       {"m_center", limits.m_center}, {"m_high", limits.m_high},
  };
}

nlohmann::ordered_json model_fields(const OrderedGoModel& model) {
  return nlohmann::ordered_json{
      {"a", model.params.a}, {"b", model.params.b}, {"r", model.order_r}};
}

}  // namespace

nlohmann::ordered_json limits_json(const OrderedGoModel& model, const ControlLimits& limits) {
  return nlohmann::ordered_json{{"model", model_fields(model)},
                                {"limits", limits_fields(limits)}};
}

nlohmann::ordered_json chart_json(const MeanValueChart& chart) {
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const auto& p : chart.points)
    points.push_back(nlohmann::ordered_json{{"index", p.index},
                                            {"time", p.time},
                                            {"m", p.m_value},
                                            {"diff", p.diff},
                                            {"status", to_string(p.status)}});
  return nlohmann::ordered_json{
      {"model", model_fields(chart.model)},
      {"limits", limits_fields(chart.limits)},
      {"points", std::move(points)},
      {"verdict", to_string(chart.verdict)},
      {"alarms", chart.alarm_indices},
  };
}

nlohmann::ordered_json detect_json(const DetectReport& report) {
  return nlohmann::ordered_json{
      {"verdict", to_string(report.verdict)},
      {"alarms", report.alarms},
      {"above_ucl", report.above_ucl},
      {"point_count", report.point_count},
      {"alarm_count", report.alarms.size()},
      {"above_ucl_count", report.above_ucl.size()},
  };
}

nlohmann::ordered_json report_json(const InputDigest& input, const FitResult* fit,
                                   const MeanValueChart& chart) {
  const DetectReport verdict = detect(chart);
  return nlohmann::ordered_json{
      {"input",
       {{"count", input.count}, {"sum", input.sum}, {"source_label", input.source_label}}},
      {"order_r", chart.model.order_r},
      {"fit", fit != nullptr ? fit_json(*fit) : nlohmann::ordered_json(nullptr)},
      {"limits", limits_fields(chart.limits)},
      {"chart", chart_json(chart)},
      {"summary",
       {{"point_count", verdict.point_count},
        {"alarm_count", verdict.alarms.size()},
        {"above_ucl_count", verdict.above_ucl.size()},
        {"verdict", to_string(verdict.verdict)}}},
      {"version", kVersion},
  };
}

namespace {

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log_scale = false;

  double fraction(double v) const {
    if (log_scale) {
      const double cv = std::max(v, lo);
      return (std::log10(cv) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
    }
    return (v - lo) / (hi - lo);
  }
};

void svg_line(std::string& out, double x1, double y1, double x2, double y2,
              const std::string& style) {
  out += "<line x1=\"" + fixed(x1, 2) + "\" y1=\"" + fixed(y1, 2) + "\" x2=\"" + fixed(x2, 2) +
         "\" y2=\"" + fixed(y2, 2) + "\" " + style + "/>\n";
}

void svg_text(std::string& out, double x, double y, const std::string& text,
              const std::string& attrs) {
  out += "<text x=\"" + fixed(x, 2) + "\" y=\"" + fixed(y, 2) + "\" " + attrs + ">" + text +
         "</text>\n";
}

}  // namespace

std::string chart_svg(const MeanValueChart& chart, bool log_y, const std::string& title) {
  constexpr double width = 880.0;
  constexpr double height = 560.0;
  constexpr double left = 76.0;
  constexpr double right = 860.0;
  constexpr double top = 48.0;
  constexpr double bottom = 500.0;

  const auto& limits = chart.limits;
  double lo = limits.m_low;
  double hi = limits.m_high;
  for (const auto& p : chart.points) {
    if (p.diff > 0.0) lo = std::min(lo, p.diff);
    hi = std::max(hi, p.diff);
  }
  Axis y;
  y.log_scale = log_y;
  if (log_y) {
    y.lo = lo * 0.5;
    y.hi = hi * 2.0;
  } else {
    y.lo = 0.0;
    y.hi = hi * 1.08;
  }

  const int n = static_cast<int>(chart.points.size());
  const auto px = [&](int index) {
    const double f = n > 1 ? (static_cast<double>(index) - 1.0) / (n - 1) : 0.5;
    return left + f * (right - left);
  };
  const auto py = [&](double v) { return bottom - y.fraction(v) * (bottom - top); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width, 0) + "\" height=\"" +
         fixed(height, 0) + "\" viewBox=\"0 0 " + fixed(width, 0) + " " + fixed(height, 0) +
         "\">\n";
  out += "<rect width=\"" + fixed(width, 0) + "\" height=\"" + fixed(height, 0) +
         "\" fill=\"white\"/>\n";
  svg_text(out, left, 26.0, title, "font-family=\"sans-serif\" font-size=\"16\"");

  // frame
  svg_line(out, left, top, left, bottom, "stroke=\"#333333\" stroke-width=\"1\"");
  svg_line(out, left, bottom, right, bottom, "stroke=\"#333333\" stroke-width=\"1\"");

  // y ticks: decades when log, 5 even steps otherwise
  if (log_y) {
    const int d_lo = static_cast<int>(std::ceil(std::log10(y.lo)));
    const int d_hi = static_cast<int>(std::floor(std::log10(y.hi)));
    for (int d = d_lo; d <= d_hi; ++d) {
      const double v = std::pow(10.0, d);
      const double yy = py(v);
      svg_line(out, left - 4, yy, left, yy, "stroke=\"#333333\" stroke-width=\"1\"");
      svg_line(out, left, yy, right, yy, "stroke=\"#eeeeee\" stroke-width=\"1\"");
      char label[32];
      std::snprintf(label, sizeof label, "1e%d", d);
      svg_text(out, left - 8, yy + 4, label,
               "font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\"");
    }
  } else {
    for (int i = 0; i <= 5; ++i) {
      const double v = y.lo + (y.hi - y.lo) * i / 5.0;
      const double yy = py(v);
      svg_line(out, left - 4, yy, left, yy, "stroke=\"#333333\" stroke-width=\"1\"");
      svg_text(out, left - 8, yy + 4, fixed(v, 3),
               "font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\"");
    }
  }

  // x ticks on point indices
  const int stride = std::max(1, (n + 9) / 10);
  for (int i = 1; i <= n; i += stride) {
    const double xx = px(i);
    svg_line(out, xx, bottom, xx, bottom + 4, "stroke=\"#333333\" stroke-width=\"1\"");
    svg_text(out, xx, bottom + 18, std::to_string(i),
             "font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\"");
  }
  svg_text(out, (left + right) / 2.0, bottom + 40, "point index",
           "font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\"");
  svg_text(out, 20.0, (top + bottom) / 2.0, "m(t) successive difference",
           "font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 20 274)\"");

  // control limit lines
  struct Line {
    double value;
    const char* name;
    const char* color;
  };
  const Line lines[3] = {{limits.m_low, "LCL", "#c0392b"},
                         {limits.m_center, "CL", "#7f8c8d"},
                         {limits.m_high, "UCL", "#27ae60"}};
  for (const auto& line : lines) {
    const double yy = py(line.value);
    svg_line(out, left, yy, right, yy,
             std::string("stroke=\"") + line.color + "\" stroke-width=\"1.2\" stroke-dasharray=\"6 3\"");
    svg_text(out, right + 4, yy + 4, line.name,
             std::string("font-family=\"sans-serif\" font-size=\"11\" fill=\"") + line.color + "\"");
  }

  // polyline through the points, then the marks
  std::string path = "<polyline fill=\"none\" stroke=\"#5b8db8\" stroke-width=\"1\" points=\"";
  for (const auto& p : chart.points) {
    path += fixed(px(p.index), 2) + "," + fixed(py(p.diff), 2) + " ";
  }
  if (!chart.points.empty()) path.pop_back();
  path += "\"/>\n";
  out += path;
  for (const auto& p : chart.points) {
    const char* fill = p.status == PointStatus::below_lcl
                           ? "#c0392b"
                           : (p.status == PointStatus::above_ucl ? "#27ae60" : "#2c5d8a");
    out += "<circle cx=\"" + fixed(px(p.index), 2) + "\" cy=\"" + fixed(py(p.diff), 2) +
           "\" r=\"3\" fill=\"" + fill + "\"/>\n";
  }

  out += "</svg>\n";
  return out;
}

}  // namespace relimon
