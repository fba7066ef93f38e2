#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fhsrisk {

using Date = std::chrono::sys_days;

/// Parses a strict `YYYY-MM-DD` calendar date. Throws UnparsableDate.
Date parse_iso_date(std::string_view text);
std::string format_iso_date(Date d);

struct CsvSchema {
  std::string date_column = "date";
  std::string close_column = "close";
};

/// Dated daily close prices for one asset.
struct PriceSeries {
  std::string asset_id;
  std::vector<Date> dates;
  std::vector<double> closes;

  std::size_t size() const noexcept { return closes.size(); }
};

/// Log-difference returns; dates[t] is the date of the later close.
struct ReturnSeries {
  std::string asset_id;
  std::vector<Date> dates;
  std::vector<double> returns;

  std::size_t size() const noexcept { return returns.size(); }
};

PriceSeries parse_price_csv(std::istream& in, std::string asset_id,
                            const CsvSchema& schema = {});
PriceSeries parse_price_csv(const std::filesystem::path& path,
                            std::string asset_id, const CsvSchema& schema = {});

void write_price_csv(std::ostream& out, const PriceSeries& series,
                     const CsvSchema& schema = {});

/// Linearly interpolates price levels over every missing calendar day.
/// Observed closes are passed through untouched.
PriceSeries fill_calendar_gaps(const PriceSeries& series);

ReturnSeries log_returns(const PriceSeries& series);

/// Trims every series to the common window [max first date, min last date]
/// and gap-fills it, so all outputs share one date vector.
std::vector<PriceSeries> align_panel(const std::vector<PriceSeries>& series_list);

} // namespace fhsrisk
