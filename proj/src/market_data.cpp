#include "fhsrisk/market_data.hpp"

#include "fhsrisk/error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace fhsrisk {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class Int>
bool parse_int(std::string_view s, Int& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

} // namespace

Date parse_iso_date(std::string_view text) {
  text = trim(text);
  auto fail = [&] {
    return Error(ErrorCode::UnparsableDate, "'" + std::string(text) + "' is not YYYY-MM-DD");
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw fail();
  int y = 0;
  unsigned m = 0, d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d))
    throw fail();
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) throw fail();
  return Date{ymd};
}

std::string format_iso_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

PriceSeries parse_price_csv(std::istream& in, std::string asset_id, const CsvSchema& schema) {
  std::string line;
  if (!std::getline(in, line))
    throw Error(ErrorCode::MissingColumn, "empty input, no header row");
  const auto header = split_fields(line);
  auto column_index = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw Error(ErrorCode::MissingColumn, "column '" + name + "' not found in header");
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto date_col = column_index(schema.date_column);
  const auto close_col = column_index(schema.close_column);

  std::vector<std::pair<Date, double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() <= std::max(date_col, close_col))
      throw Error(ErrorCode::MissingColumn, "line " + std::to_string(line_no) + " is short");
    const Date date = parse_iso_date(fields[date_col]);
    double close = 0.0;
    const auto text = fields[close_col];
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), close);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw Error(ErrorCode::UnparsablePrice,
                  "line " + std::to_string(line_no) + ": '" + std::string(text) + "'");
    if (!std::isfinite(close) || close <= 0.0)
      throw Error(ErrorCode::NonPositivePrice,
                  "line " + std::to_string(line_no) + ": close " + std::string(text));
    rows.emplace_back(date, close);
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  PriceSeries out;
  out.asset_id = std::move(asset_id);
  out.dates.reserve(rows.size());
  out.closes.reserve(rows.size());
  for (const auto& [date, close] : rows) {
    if (!out.dates.empty() && out.dates.back() == date)
      throw Error(ErrorCode::DuplicateDate, format_iso_date(date));
    out.dates.push_back(date);
    out.closes.push_back(close);
  }
  return out;
}

PriceSeries parse_price_csv(const std::filesystem::path& path, std::string asset_id,
                            const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return parse_price_csv(in, std::move(asset_id), schema);
}

void write_price_csv(std::ostream& out, const PriceSeries& series, const CsvSchema& schema) {
  out << schema.date_column << ',' << schema.close_column << '\n';
  char buf[32];
  for (std::size_t i = 0; i < series.size(); ++i) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, series.closes[i]);
    out << format_iso_date(series.dates[i]) << ',' << std::string_view(buf, ptr - buf) << '\n';
  }
}

PriceSeries fill_calendar_gaps(const PriceSeries& series) {
  if (series.size() < 2)
    throw Error(ErrorCode::TooShort, "gap filling needs at least 2 observations");
  if (series.dates.size() != series.closes.size())
    throw Error(ErrorCode::LengthMismatch, "dates and closes differ in length");

  PriceSeries out;
  out.asset_id = series.asset_id;
  const auto span_days = (series.dates.back() - series.dates.front()).count() + 1;
  out.dates.reserve(static_cast<std::size_t>(span_days));
  out.closes.reserve(static_cast<std::size_t>(span_days));

  out.dates.push_back(series.dates.front());
  out.closes.push_back(series.closes.front());
  for (std::size_t i = 1; i < series.size(); ++i) {
    const Date prev = series.dates[i - 1];
    const Date next = series.dates[i];
    const auto gap = (next - prev).count();
    if (gap <= 0)
      throw Error(ErrorCode::DuplicateDate, "dates not strictly increasing at " +
                                                format_iso_date(next));
    const double lo = series.closes[i - 1];
    const double hi = series.closes[i];
    for (int j = 1; j < gap; ++j) {
      out.dates.push_back(prev + std::chrono::days{j});
      out.closes.push_back(lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(gap));
    }
    out.dates.push_back(next);
    out.closes.push_back(hi);
  }
  return out;
}

ReturnSeries log_returns(const PriceSeries& series) {
  if (series.size() < 2) throw Error(ErrorCode::TooShort, "returns need at least 2 closes");
  ReturnSeries out;
  out.asset_id = series.asset_id;
  out.dates.assign(series.dates.begin() + 1, series.dates.end());
  out.returns.resize(series.size() - 1);
  for (std::size_t t = 0; t + 1 < series.size(); ++t) {
    out.returns[t] = std::log(series.closes[t + 1]) - std::log(series.closes[t]);
    if (!std::isfinite(out.returns[t]))
      throw Error(ErrorCode::NonPositivePrice,
                  "non-finite return at " + format_iso_date(series.dates[t + 1]));
  }
  return out;
}

std::vector<PriceSeries> align_panel(const std::vector<PriceSeries>& series_list) {
  if (series_list.empty()) return {};
  Date start = Date::min();
  Date end = Date::max();
  for (const auto& s : series_list) {
    if (s.size() < 2) throw Error(ErrorCode::TooShort, s.asset_id + " has fewer than 2 closes");
    start = std::max(start, s.dates.front());
    end = std::min(end, s.dates.back());
  }
  if (end - start < std::chrono::days{1})
    throw Error(ErrorCode::NoOverlap, "series share fewer than 2 calendar days");

  std::vector<PriceSeries> out;
  out.reserve(series_list.size());
  for (const auto& s : series_list) {
    PriceSeries filled = fill_calendar_gaps(s);
    const auto first = static_cast<std::size_t>((start - filled.dates.front()).count());
    const auto count = static_cast<std::size_t>((end - start).count() + 1);
    PriceSeries trimmed;
    trimmed.asset_id = filled.asset_id;
    trimmed.dates.assign(filled.dates.begin() + first, filled.dates.begin() + first + count);
    trimmed.closes.assign(filled.closes.begin() + first, filled.closes.begin() + first + count);
    out.push_back(std::move(trimmed));
  }
  return out;
}

} // namespace fhsrisk
