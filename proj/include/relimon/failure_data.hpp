#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace relimon {

/// Ordered inter-failure times as recorded (time units are opaque).
/// Zeros are legal observations; negatives and non-finite values are not.
struct FailureSeries {
  std::vector<double> deltas;
  std::string source_label;
};

enum class SeriesFormat { plain, csv };

/// Parse inter-failure data.
/// plain: one non-negative real per line, '#' starts a comment, blank lines ignored.
/// csv:   header "fault,time", then rows of 1-based index and delta.
/// Errors carry the offending line number.
FailureSeries parse_failure_data(std::string_view text, SeriesFormat format,
                                 std::string source_label = "");

/// Inverse of parse_failure_data; byte-stable (LF endings, no trailing whitespace,
/// shortest round-trip number formatting).
std::string serialize_failure_data(const FailureSeries& series, SeriesFormat format);

/// The bundled Musa (1975) dataset: 136 inter-failure times.
FailureSeries musa_fixture();

/// Cumulative times at every r-th failure: cum_times[k] = sum of the first
/// (k+1)*r deltas. A trailing incomplete subgroup is dropped and counted.
struct GroupedSeries {
  int order_r = 0;
  std::vector<double> cum_times;
  std::size_t n_groups = 0;
  std::size_t dropped_tail = 0;
};

/// Requires r >= 1 and at least two complete subgroups. The first subgroup
/// must have a positive sum; later zero-sum subgroups (ties) are permitted.
GroupedSeries group_by_order(const FailureSeries& series, int r);

void validate(const FailureSeries& series);
void validate(const GroupedSeries& grouped);

}  // namespace relimon
