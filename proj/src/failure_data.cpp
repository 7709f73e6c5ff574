#include "relimon/failure_data.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "relimon/error.hpp"

namespace relimon {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    raise(ErrorCode::parse_error,
          "line " + std::to_string(line_no) + ": invalid number '" + std::string(token) + "'");
  if (!std::isfinite(value))
    raise(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": non-finite value");
  if (value < 0.0)
    raise(ErrorCode::parse_error,
          "line " + std::to_string(line_no) + ": negative inter-failure time");
  return value;
}

long parse_index(std::string_view token, std::size_t line_no) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    raise(ErrorCode::parse_error,
          "line " + std::to_string(line_no) + ": invalid fault index '" + std::string(token) + "'");
  return value;
}

// Calls fn(line, line_no) for every physical line, 1-based.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    ++line_no;
    fn(text.substr(pos, end - pos), line_no);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

void append_number(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

FailureSeries parse_failure_data(std::string_view text, SeriesFormat format,
                                 std::string source_label) {
  FailureSeries series;
  series.source_label = std::move(source_label);

  if (format == SeriesFormat::plain) {
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
      if (const auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) return;
      series.deltas.push_back(parse_number(line, line_no));
    });
  } else {
    bool header_seen = false;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
      line = trim(line);
      if (line.empty()) return;
      if (!header_seen) {
        if (line != "fault,time")
          raise(ErrorCode::parse_error,
                "line " + std::to_string(line_no) + ": expected header 'fault,time'");
        header_seen = true;
        return;
      }
      const auto comma = line.find(',');
      if (comma == std::string_view::npos)
        raise(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": expected 'fault,time' row");
      parse_index(trim(line.substr(0, comma)), line_no);
      series.deltas.push_back(parse_number(trim(line.substr(comma + 1)), line_no));
    });
  }

  if (series.deltas.empty()) raise(ErrorCode::parse_error, "no observations");
  return series;
}

std::string serialize_failure_data(const FailureSeries& series, SeriesFormat format) {
  validate(series);
  std::string out;
  out.reserve(series.deltas.size() * 8);
  if (format == SeriesFormat::csv) out += "fault,time\n";
  for (std::size_t i = 0; i < series.deltas.size(); ++i) {
    if (format == SeriesFormat::csv) {
      out += std::to_string(i + 1);
      out += ',';
    }
    append_number(out, series.deltas[i]);
    out += '\n';
  }
  return out;
}

void validate(const FailureSeries& series) {
  if (series.deltas.empty()) raise(ErrorCode::invalid_argument, "series has no observations");
  for (const double d : series.deltas)
    if (!std::isfinite(d) || d < 0.0)
      raise(ErrorCode::invalid_argument, "inter-failure times must be finite and >= 0");
}

GroupedSeries group_by_order(const FailureSeries& series, int r) {
  validate(series);
  if (r < 1) raise(ErrorCode::invalid_argument, "order r must be >= 1");

  const std::size_t raw = series.deltas.size();
  const std::size_t n = raw / static_cast<std::size_t>(r);
  if (n < 2)
    raise(ErrorCode::invalid_argument,
          "need at least 2 complete subgroups of size " + std::to_string(r) + ", have " +
              std::to_string(n));

  GroupedSeries grouped;
  grouped.order_r = r;
  grouped.n_groups = n;
  grouped.dropped_tail = raw % static_cast<std::size_t>(r);
  grouped.cum_times.reserve(n);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < static_cast<std::size_t>(r); ++j)
      acc += series.deltas[k * static_cast<std::size_t>(r) + j];
    grouped.cum_times.push_back(acc);
  }
  if (!(grouped.cum_times.front() > 0.0))
    raise(ErrorCode::invalid_argument, "first subgroup sums to zero");
  return grouped;
}

void validate(const GroupedSeries& grouped) {
  if (grouped.order_r < 1) raise(ErrorCode::invalid_argument, "order r must be >= 1");
  if (grouped.cum_times.empty() || grouped.cum_times.size() != grouped.n_groups)
    raise(ErrorCode::invalid_argument, "grouped series is empty or inconsistent");
  double prev = 0.0;
  for (const double s : grouped.cum_times) {
    if (!std::isfinite(s) || s <= 0.0)
      raise(ErrorCode::invalid_argument, "cumulative times must be positive and finite");
    if (s < prev) raise(ErrorCode::invalid_argument, "cumulative times must be non-decreasing");
    prev = s;
  }
}

}  // namespace relimon
