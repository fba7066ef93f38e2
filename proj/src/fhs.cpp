#include "fhsrisk/fhs.hpp"

#include "fhsrisk/error.hpp"
#include "fhsrisk/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace fhsrisk::fhs {

namespace {

constexpr double kLevelMatchTolerance = 1e-12;

bool same_level(double a, double b) { return std::fabs(a - b) <= kLevelMatchTolerance; }

std::vector<double> sorted_tail(std::span<const double> x, std::size_t k) {
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  v.resize(k);
  return v;
}

std::size_t checked_tail_count(std::span<const double> x, double level) {
  if (!(level > 0.0 && level < 1.0))
    throw Error(ErrorCode::ProbabilityOutOfDomain, "tail level must lie in (0, 1)");
  const std::size_t k = tail_count(level, x.size());
  if (k < 1)
    throw Error(ErrorCode::TooFewTrials, "level " + std::to_string(level) + " with " +
                                             std::to_string(x.size()) +
                                             " trials leaves no tail observation");
  return k;
}

} // namespace

void RiskSpec::validate() const {
  if (levels.empty()) throw Error(ErrorCode::InvalidSpec, "no tail levels given");
  if (horizon < 1) throw Error(ErrorCode::InvalidSpec, "horizon must be at least 1 day");
  if (trials < 1000) throw Error(ErrorCode::InvalidSpec, "trials must be at least 1000");
  for (double level : levels) {
    if (!(level > 0.0 && level < 0.5))
      throw Error(ErrorCode::InvalidSpec, "level " + std::to_string(level) + " outside (0, 0.5)");
    if (tail_count(level, trials) < 1)
      throw Error(ErrorCode::InvalidSpec, "level " + std::to_string(level) + " * trials < 1");
  }
}

std::size_t tail_count(double level, std::size_t trials) {
  const double product = level * static_cast<double>(trials);
  return static_cast<std::size_t>(std::floor(product * (1.0 + kLevelMatchTolerance)));
}

SimulatedSample run_fhs(const garch::GjrParams& params, const garch::SimState& state,
                        std::span<const double> residuals, const RiskSpec& spec,
                        unsigned threads) {
  if (residuals.empty()) throw Error(ErrorCode::EmptyResiduals, "no standardized residuals");
  spec.validate();
  params.validate();

  SimulatedSample sample;
  sample.horizon = spec.horizon;
  sample.seed = spec.seed;
  sample.cum_returns.resize(spec.trials);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      rng::CounterRng gen(spec.seed, i);
      sample.cum_returns[i] =
          garch::simulate_cumulative(params, state, residuals, spec.horizon, gen);
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, spec.trials));
  if (threads <= 1) {
    run_range(0, spec.trials);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (spec.trials + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(spec.trials, begin + chunk);
      if (begin >= end) break;
      workers.emplace_back(run_range, begin, end);
    }
  }
  return sample;
}

SimulatedSample run_fhs(const garch::FitResult& fit, const RiskSpec& spec, unsigned threads) {
  if (fit.filter.z.empty()) throw Error(ErrorCode::EmptyResiduals, "fit has no residuals");
  return run_fhs(fit.params, garch::terminal_state(fit.filter), fit.filter.z, spec, threads);
}

double var_from_sample(std::span<const double> cum_returns, double level) {
  const std::size_t k = checked_tail_count(cum_returns, level);
  const auto tail = sorted_tail(cum_returns, k);
  return -tail.back();
}

double var_from_sample(const SimulatedSample& sample, double level) {
  return var_from_sample(sample.cum_returns, level);
}

double es_from_sample(std::span<const double> cum_returns, double level) {
  const std::size_t k = checked_tail_count(cum_returns, level);
  const auto tail = sorted_tail(cum_returns, k);
  double sum = 0.0;
  for (double v : tail) sum += v;
  return -(sum / static_cast<double>(k));
}

double es_from_sample(const SimulatedSample& sample, double level) {
  return es_from_sample(sample.cum_returns, level);
}

OneStepForecast one_step_forecast(const garch::FitResult& fit) {
  const auto state = garch::terminal_state(fit.filter);
  const auto& p = fit.params;
  return {p.mu + p.phi * state.last_return, std::sqrt(p.next_variance(state.eps, state.sigma2))};
}

double parametric_var(const Piv& law, double mean, double sigma, double level) {
  if (!(level > 0.0 && level < 1.0))
    throw Error(ErrorCode::ProbabilityOutOfDomain, "tail level must lie in (0, 1)");
  return -(mean + law.inv_cdf(level) * sigma);
}

double parametric_var(const garch::FitResult& fit, double level) {
  const auto forecast = one_step_forecast(fit);
  return parametric_var(Piv(fit.params.m, fit.params.nu), forecast.mean, forecast.sigma, level);
}

const RiskEntry* RiskReport::find(double level) const {
  for (const auto& e : entries)
    if (same_level(e.level, level)) return &e;
  return nullptr;
}

RiskReport make_report(std::string asset_id, const SimulatedSample& sample,
                       const RiskSpec& spec) {
  RiskReport report;
  report.asset_id = std::move(asset_id);
  report.horizon = sample.horizon;
  report.trials = sample.cum_returns.size();
  report.seed = sample.seed;

  std::vector<double> levels = spec.levels;
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end(), same_level), levels.end());

  std::vector<double> sorted(sample.cum_returns);
  std::sort(sorted.begin(), sorted.end());
  for (double level : levels) {
    // Same quantities as var_from_sample / es_from_sample, one sort for all levels.
    const std::size_t k = checked_tail_count(sorted, level);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += sorted[i];
    report.entries.push_back({level, -sorted[k - 1], -(sum / static_cast<double>(k))});
  }
  if (report.find(0.01) && report.find(0.025)) report.basel_gap = basel_consistency(report);
  return report;
}

double basel_consistency(double var_99, double es_975) {
  return std::fabs(var_99 - es_975) / es_975;
}

double basel_consistency(const RiskReport& report) {
  const RiskEntry* var_entry = report.find(0.01);
  const RiskEntry* es_entry = report.find(0.025);
  if (!var_entry || !es_entry)
    throw Error(ErrorCode::MissingLevel, "report needs the 0.01 and 0.025 levels");
  return basel_consistency(var_entry->var, es_entry->es);
}

} // namespace fhsrisk::fhs
