#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fhsrisk/gjr_garch.hpp"
#include "fhsrisk/pearson4.hpp"

namespace fhsrisk::fhs {

/// Tail probabilities (1 - theta), horizon in trading days, trial count and seed.
struct RiskSpec {
  std::vector<double> levels = {0.10, 0.05, 0.025, 0.01};
  std::size_t horizon = 10;
  std::size_t trials = 100000;
  std::uint64_t seed = 0;

  /// Throws InvalidSpec: levels in (0, 0.5), horizon >= 1, trials >= 1000,
  /// and at least one order statistic in every tail.
  void validate() const;
};

struct SimulatedSample {
  std::vector<double> cum_returns;
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
};

/// Number of tail observations k = floor(level * N). The product is nudged
/// by a relative 1e-12 so that levels like 0.29 with N = 100 give 29, not 28.
std::size_t tail_count(double level, std::size_t trials);

/// One bootstrap path per trial from the end-of-sample state. Trial i owns
/// the counter stream (seed, i), so the output is identical for any
/// `threads` value (0 picks the hardware concurrency).
SimulatedSample run_fhs(const garch::GjrParams& params, const garch::SimState& state,
                        std::span<const double> residuals, const RiskSpec& spec,
                        unsigned threads = 0);
SimulatedSample run_fhs(const garch::FitResult& fit, const RiskSpec& spec, unsigned threads = 0);

/// -x_(k) of the ascending sample, k = tail_count(level, N). Positive = loss.
double var_from_sample(std::span<const double> cum_returns, double level);
double var_from_sample(const SimulatedSample& sample, double level);

/// -(1/k) sum of the k smallest outcomes.
double es_from_sample(std::span<const double> cum_returns, double level);
double es_from_sample(const SimulatedSample& sample, double level);

struct OneStepForecast {
  double mean;   // mu + phi r_T
  double sigma;  // sqrt of the next variance from the terminal state
};
OneStepForecast one_step_forecast(const garch::FitResult& fit);

/// -(mean + F^-1(level) sigma): one-day Pearson IV quantile VaR.
double parametric_var(const Piv& law, double mean, double sigma, double level);
double parametric_var(const garch::FitResult& fit, double level);

struct RiskEntry {
  double level;
  double var;
  double es;
};

struct RiskReport {
  std::string asset_id;
  std::vector<RiskEntry> entries;  // ordered by decreasing level
  std::size_t horizon = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<double> basel_gap;

  const RiskEntry* find(double level) const;
};

RiskReport make_report(std::string asset_id, const SimulatedSample& sample,
                       const RiskSpec& spec);

/// |VaR(0.01) - ES(0.025)| / ES(0.025). Throws MissingLevel.
double basel_consistency(const RiskReport& report);
double basel_consistency(double var_99, double es_975);

} // namespace fhsrisk::fhs
