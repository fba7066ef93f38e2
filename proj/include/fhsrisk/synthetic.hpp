#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fhsrisk/gjr_garch.hpp"
#include "fhsrisk/market_data.hpp"
#include "fhsrisk/pearson4.hpp"

// Synthetic data for fixtures and recovery experiments. Not used by the
// risk pipeline itself, which only ever resamples fitted residuals.
namespace fhsrisk::synthetic {

/// Pearson IV draws by inverse transform of a tabulated CDF, polished with
/// Newton steps against the exact CDF.
std::vector<double> piv_draws(const Piv& law, std::size_t n, std::uint64_t seed);

/// AR(1)-GJR(1,1) path of `n` returns with Pearson IV innovations, started at
/// sigma2 = omega / max(1 - persistence, 0.02) after `burn_in` discarded steps.
std::vector<double> gjr_returns(const garch::GjrParams& params, std::size_t n,
                                std::uint64_t seed, std::size_t burn_in = 0);

enum class Calendar { Daily, Weekdays };

/// Prices start at `start_price` on `start`; each return advances one
/// session of the calendar.
PriceSeries prices_from_returns(std::string asset_id, const std::vector<double>& returns,
                                Date start, double start_price, Calendar calendar);

} // namespace fhsrisk::synthetic
