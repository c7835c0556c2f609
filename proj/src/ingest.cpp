#include "ivnoise/ingest.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ivnoise {

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, delim)) out.push_back(field);
  if (!line.empty() && line.back() == delim) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_double(const std::string& s, double* out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  *out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && std::isfinite(*out);
}

// Accepts HH:MM:SS[.fff] or a plain number of seconds.
bool parse_time_seconds(const std::string& raw, double* out) {
  const std::string t = trim(raw);
  int h = 0, m = 0;
  double sec = 0.0;
  if (std::sscanf(t.c_str(), "%d:%d:%lf", &h, &m, &sec) == 3) {
    if (h < 0 || m < 0 || m > 59 || sec < 0.0 || sec >= 61.0) return false;
    *out = h * 3600.0 + m * 60.0 + sec;
    return true;
  }
  return parse_double(t, out);
}

std::size_t resolve_column(const std::vector<std::string>& header,
                           const std::string& spec, bool has_header) {
  if (has_header) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == spec) return i;
    }
  }
  // Fall back to a zero-based numeric index.
  try {
    std::size_t pos = 0;
    const auto idx = std::stoul(spec, &pos);
    if (pos == spec.size()) return idx;
  } catch (...) {
  }
  throw std::invalid_argument("ingest: column '" + spec + "' not found");
}

}  // namespace

IngestReport load_days(const IngestSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) throw std::runtime_error("ingest: cannot open " + spec.path);

  const bool filter_session =
      !spec.session_start.empty() && !spec.session_end.empty();
  double session_open = 0.0, session_close = 0.0;
  if (filter_session) {
    if (!parse_time_seconds(spec.session_start, &session_open) ||
        !parse_time_seconds(spec.session_end, &session_close) ||
        !(session_open < session_close)) {
      throw std::invalid_argument("ingest: bad session window");
    }
  }

  std::string line;
  std::vector<std::string> header;
  std::size_t line_no = 0;
  if (spec.has_header) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("ingest: empty file " + spec.path);
    }
    ++line_no;
    header = split_line(line, spec.delimiter);
  }
  const bool has_date = !spec.date_column.empty();
  const std::size_t date_idx =
      has_date ? resolve_column(header, spec.date_column, spec.has_header) : 0;
  const std::size_t time_idx =
      resolve_column(header, spec.time_column, spec.has_header);
  const std::size_t price_idx =
      resolve_column(header, spec.price_column, spec.has_header);

  IngestReport report;
  std::vector<std::string> day_order;
  std::map<std::string, TickSeries> days;
  std::vector<std::string> seen_order;
  std::map<std::string, std::size_t> seen_kept;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++report.rows_in;
    const auto fields = split_line(line, spec.delimiter);
    const std::size_t needed =
        std::max({time_idx, price_idx, has_date ? date_idx : std::size_t{0}});
    if (fields.size() <= needed) {
      ++report.dropped_parse;
      report.parse_errors.emplace_back(line_no, "too few columns");
      continue;
    }
    if (has_date) {
      const std::string seen = trim(fields[date_idx]);
      if (seen_kept.emplace(seen, 0).second) seen_order.push_back(seen);
    }
    double t = 0.0, price = 0.0;
    if (!parse_time_seconds(fields[time_idx], &t)) {
      ++report.dropped_parse;
      report.parse_errors.emplace_back(line_no,
                                       "bad time '" + fields[time_idx] + "'");
      continue;
    }
    if (!parse_double(fields[price_idx], &price)) {
      ++report.dropped_parse;
      report.parse_errors.emplace_back(
          line_no, "bad price '" + fields[price_idx] + "'");
      continue;
    }
    if (filter_session && (t < session_open || t > session_close)) {
      ++report.dropped_session;
      continue;
    }
    if (!spec.prices_are_log && !(price > 0.0)) {
      ++report.dropped_nonpositive;
      continue;
    }
    const std::string date = has_date ? trim(fields[date_idx]) : std::string();
    auto it = days.find(date);
    if (it == days.end()) {
      day_order.push_back(date);
      it = days.emplace(date, TickSeries{}).first;
      it->second.label = spec.path + (date.empty() ? "" : ":" + date);
    }
    TickSeries& day = it->second;
    const double rebased = filter_session ? t - session_open : t;
    if (!day.timestamps.empty() && !(rebased > day.timestamps.back())) {
      // keep-first rule for simultaneous (or out-of-order) trades
      ++report.dropped_duplicate_ts;
      continue;
    }
    day.timestamps.push_back(rebased);
    day.log_prices.push_back(spec.prices_are_log ? price : std::log(price));
    ++report.rows_kept;
    if (has_date) ++seen_kept[date];
  }

  for (const auto& date : seen_order) {
    if (seen_kept[date] == 0) {
      report.warnings.push_back("empty day skipped: " + date);
    }
  }
  for (const auto& date : day_order) {
    TickSeries& day = days[date];
    validate(day);
    report.days.push_back({date, std::move(day)});
  }
  return report;
}

void write_canonical_csv(const TickSeries& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "timestamp_seconds,log_price\n";
  char buf[80];
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", s.timestamps[i],
                  s.log_prices[i]);
    out << buf;
  }
}

TickSeries read_canonical_csv(const std::string& path, std::string label) {
  IngestSpec spec;
  spec.path = path;
  spec.has_header = true;
  spec.time_column = "timestamp_seconds";
  spec.price_column = "log_price";
  spec.session_start.clear();
  spec.session_end.clear();
  spec.prices_are_log = true;
  IngestReport report = load_days(spec);
  if (report.days.empty()) {
    throw std::runtime_error("read_canonical_csv: no rows in " + path);
  }
  TickSeries s = std::move(report.days.front().series);
  if (!label.empty()) s.label = std::move(label);
  return s;
}

}  // namespace ivnoise
