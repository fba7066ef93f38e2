// Writes the bundled synthetic panel: one CSV per asset, the generating
// parameters, and a riskcli config. Output is a pure function of the
// constants below.
//
//   make_fixtures <output-dir>

#include "fhsrisk/json_io.hpp"
#include "fhsrisk/market_data.hpp"
#include "fhsrisk/synthetic.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace fhsrisk;

namespace {

struct FixtureAsset {
  const char* id;
  garch::GjrParams params;
  double start_price;
  synthetic::Calendar calendar;
  std::uint64_t seed;
};

// Magnitudes are typical of daily GJR fits to an equity index and
// four digital currencies over 2015-2017.
const FixtureAsset kAssets[] = {
    {"SPX", {2.2e-4, 0.0845, 2.3e-5, 0.0, 0.1903, 0.9065, 2.5570, -0.0943}, 2077.57,
     synthetic::Calendar::Weekdays, 11},
    {"BTC", {0.0024, -0.0911, 1.3e-5, 0.2665, -0.2232, 0.8488, 3.2421, 0.2439}, 279.58,
     synthetic::Calendar::Daily, 12},
    {"ETH", {0.0031, 0.0279, 2.6e-4, 0.2820, 0.0429, 0.6983, 3.7934, -0.7575}, 2.77,
     synthetic::Calendar::Daily, 13},
    {"XRP", {-0.0016, -0.0035, 2.3e-4, 0.5051, -0.1296, 0.5562, 2.7649, -0.3397}, 0.0077,
     synthetic::Calendar::Daily, 14},
    {"LTC", {0.0011, -0.0936, 2.1e-5, 0.1855, -0.1679, 0.8937, 2.5237, -0.3125}, 4.21,
     synthetic::Calendar::Daily, 15},
};

constexpr std::size_t kBurnIn = 500;

const char* kConfig = R"({
  "assets": [
    {"id": "SPX", "path": "SPX.csv", "date_column": "date", "close_column": "close"},
    {"id": "BTC", "path": "BTC.csv", "date_column": "date", "close_column": "close"},
    {"id": "ETH", "path": "ETH.csv", "date_column": "date", "close_column": "close"},
    {"id": "XRP", "path": "XRP.csv", "date_column": "date", "close_column": "close"},
    {"id": "LTC", "path": "LTC.csv", "date_column": "date", "close_column": "close"}
  ],
  "lags": 12,
  "risk": {"levels": [0.10, 0.05, 0.025, 0.01], "horizon": 10, "trials": 10000, "seed": 42},
  "format": "text",
  "output_dir": "out"
}
)";

// Sessions needed so the series reaches `last` when started on `first`.
std::size_t sessions_between(Date first, Date last, synthetic::Calendar calendar) {
  std::size_t n = 0;
  for (Date d = first + std::chrono::days{1}; d <= last; d += std::chrono::days{1}) {
    const std::chrono::weekday wd{d};
    if (calendar == synthetic::Calendar::Daily ||
        (wd != std::chrono::Saturday && wd != std::chrono::Sunday))
      ++n;
  }
  return n;
}

} // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output-dir>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir);

  const Date first = parse_iso_date("2015-08-08");
  const Date last = parse_iso_date("2017-07-10");
  // The weekday series starts on the Friday before so gap filling covers the
  // first weekend.
  const Date first_session = parse_iso_date("2015-08-07");

  nlohmann::json params = nlohmann::json::object();
  for (const auto& a : kAssets) {
    const Date start = a.calendar == synthetic::Calendar::Daily ? first : first_session;
    const auto returns = synthetic::gjr_returns(a.params, sessions_between(start, last, a.calendar),
                                                a.seed, kBurnIn);
    const auto prices =
        synthetic::prices_from_returns(a.id, returns, start, a.start_price, a.calendar);
    std::ofstream out(dir / (std::string(a.id) + ".csv"));
    write_price_csv(out, prices);
    params[a.id] = {{"params", a.params},
                    {"seed", a.seed},
                    {"burn_in", kBurnIn},
                    {"calendar", a.calendar == synthetic::Calendar::Daily ? "daily" : "weekdays"}};
  }
  std::ofstream(dir / "params.json") << params.dump(2) << '\n';
  std::ofstream(dir / "config.json") << kConfig;
  return 0;
}
