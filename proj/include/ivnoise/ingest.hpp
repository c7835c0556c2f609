#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ivnoise/tick_series.hpp"

namespace ivnoise {

/// How to read a tick CSV. Columns are addressed by header name, or by
/// zero-based index written as a number when the file has no header.
/// The canonical minimal schema is date,time,price.
struct IngestSpec {
  std::string path;
  char delimiter = ',';
  bool has_header = true;
  std::string date_column;            // empty: whole file is one day
  std::string time_column = "time";   // HH:MM:SS[.fff] or plain seconds
  std::string price_column = "price";
  std::string session_start = "09:30:00";  // empty disables the filter
  std::string session_end = "16:00:00";
  bool prices_are_log = false;  // raw prices are log-transformed
};

struct DayResult {
  std::string date;
  TickSeries series;
};

struct IngestReport {
  std::vector<DayResult> days;
  std::size_t rows_in = 0;
  std::size_t rows_kept = 0;
  std::size_t dropped_session = 0;
  std::size_t dropped_nonpositive = 0;
  std::size_t dropped_duplicate_ts = 0;
  std::size_t dropped_parse = 0;
  std::vector<std::pair<std::size_t, std::string>> parse_errors;  // line, what
  std::vector<std::string> warnings;
};

/// Loads per-day series: session filtering (inclusive window), keep-first
/// de-duplication of equal timestamps, positivity check before the log
/// transform, timestamps rebased to seconds since session open. Bad rows
/// are skipped and counted; rows_in = rows_kept + all drop counts.
IngestReport load_days(const IngestSpec& spec);

/// Canonical two-column output (timestamp_seconds,log_price) written with
/// 12 significant digits.
void write_canonical_csv(const TickSeries& s, const std::string& path);

/// Reads a canonical two-column file back into a series.
TickSeries read_canonical_csv(const std::string& path, std::string label = {});

}  // namespace ivnoise
