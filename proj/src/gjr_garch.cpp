#include "fhsrisk/gjr_garch.hpp"

#include "fhsrisk/error.hpp"
#include "fhsrisk/pearson4.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace fhsrisk::garch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMinFitLength = 50;

struct SampleMoments {
  double mean;
  double variance;  // N - 1 divisor
};

SampleMoments sample_moments(std::span<const double> r) {
  const double n = static_cast<double>(r.size());
  const double mean = std::accumulate(r.begin(), r.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : r) ss += (v - mean) * (v - mean);
  return {mean, ss / (n - 1.0)};
}

/// Shared recursion; `sink(t, sigma2, eps, z)` sees every filtered step.
/// Returns the log-likelihood, or NaN if a variance leaves (0, inf).
template <class Sink>
double run_recursion(std::span<const double> r, const GjrParams& p, const Piv& law, Sink&& sink) {
  const auto mom = sample_moments(r);
  double sigma2_prev = mom.variance;
  double eps_prev = r[0] - p.mu - p.phi * mom.mean;
  double ll = 0.0;
  for (std::size_t t = 1; t < r.size(); ++t) {
    const double sigma2 = p.next_variance(eps_prev, sigma2_prev);
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) return std::numeric_limits<double>::quiet_NaN();
    const double eps = r[t] - p.mu - p.phi * r[t - 1];
    const double z = eps / std::sqrt(sigma2);
    ll += law.log_pdf(z) - 0.5 * std::log(sigma2);
    sink(t, sigma2, eps, z);
    sigma2_prev = sigma2;
    eps_prev = eps;
  }
  return ll;
}

double standard_normal(rng::CounterRng& gen) {
  const double u1 = gen.uniform_open();
  const double u2 = gen.uniform_open();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace

GjrParams GjrParams::from_array(std::span<const double> v) {
  if (v.size() != kCount)
    throw Error(ErrorCode::InvalidParameters, "expected 8 parameter values");
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

bool GjrParams::valid() const noexcept {
  for (double v : to_array())
    if (!std::isfinite(v)) return false;
  return omega > 0.0 && alpha >= 0.0 && beta >= 0.0 && alpha + gamma >= 0.0 &&
         std::fabs(phi) < 1.0 && m > 2.0;
}

void GjrParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidParameters, what); };
  for (std::size_t i = 0; i < kCount; ++i)
    if (!std::isfinite(to_array()[i])) fail(std::string(kNames[i]) + " is not finite");
  if (!(omega > 0.0)) fail("omega must be positive");
  if (!(alpha >= 0.0)) fail("alpha must be nonnegative");
  if (!(beta >= 0.0)) fail("beta must be nonnegative");
  if (!(alpha + gamma >= 0.0)) fail("alpha + gamma must be nonnegative");
  if (!(std::fabs(phi) < 1.0)) fail("|phi| must be below 1");
  if (!(m > 2.0)) fail("m must exceed 2");
}

SimState terminal_state(const FilterOutput& out) {
  if (out.sigma2.empty()) throw Error(ErrorCode::EmptyResiduals, "filter output is empty");
  return {out.sigma2.back(), out.eps.back(), out.last_return};
}

FilterOutput filter(std::span<const double> returns, const GjrParams& params) {
  if (returns.size() < 3) throw Error(ErrorCode::TooShort, "filter needs at least 3 returns");
  params.validate();
  const Piv law(params.m, params.nu);

  FilterOutput out;
  const std::size_t n = returns.size() - 1;
  out.sigma2.reserve(n);
  out.eps.reserve(n);
  out.z.reserve(n);
  const double ll = run_recursion(returns, params, law,
                                  [&](std::size_t, double s2, double e, double z) {
                                    out.sigma2.push_back(s2);
                                    out.eps.push_back(e);
                                    out.z.push_back(z);
                                  });
  if (std::isnan(ll)) throw Error(ErrorCode::NonPositiveVariance, "variance left (0, inf)");
  out.log_likelihood = ll;
  out.last_return = returns.back();
  return out;
}

FilterOutput filter(const ReturnSeries& returns, const GjrParams& params) {
  return filter(std::span<const double>(returns.returns), params);
}

double log_likelihood(std::span<const double> returns, const GjrParams& params) {
  if (returns.size() < 3 || !params.valid()) return -kInf;
  const Piv law(params.m, params.nu);
  const double ll = run_recursion(returns, params, law, [](std::size_t, double, double, double) {});
  return std::isfinite(ll) ? ll : -kInf;
}

ThetaMap ThetaMap::for_returns(std::span<const double> returns) {
  if (returns.size() < 2) return {};
  const double sd = std::sqrt(sample_moments(returns).variance);
  return {sd > 0.0 && std::isfinite(sd) ? sd : 1.0};
}

GjrParams ThetaMap::to_params(std::span<const double> theta) const {
  if (theta.size() != GjrParams::kCount)
    throw Error(ErrorCode::InvalidParameters, "theta must have 8 entries");
  GjrParams p;
  p.mu = theta[0] * mu_scale;
  p.phi = std::tanh(theta[1]);
  p.omega = std::exp(theta[2]);
  p.alpha = std::exp(theta[3]);
  p.gamma = std::exp(theta[4]) - p.alpha;
  p.beta = std::exp(theta[5]);
  p.m = 2.0 + std::exp(theta[6]);
  p.nu = theta[7];
  return p;
}

std::array<double, GjrParams::kCount> ThetaMap::to_theta(const GjrParams& p) const {
  auto safe_log = [](double v) { return std::log(std::max(v, 1e-10)); };
  return {p.mu / mu_scale,
          std::atanh(std::clamp(p.phi, -0.999999, 0.999999)),
          safe_log(p.omega),
          safe_log(p.alpha),
          safe_log(p.alpha + p.gamma),
          safe_log(p.beta),
          safe_log(p.m - 2.0),
          p.nu};
}

double neg_log_likelihood(std::span<const double> returns, std::span<const double> theta) {
  for (double v : theta)
    if (!std::isfinite(v)) return kInf;
  const GjrParams p = ThetaMap::for_returns(returns).to_params(theta);
  const double ll = log_likelihood(returns, p);
  return std::isfinite(ll) ? -ll : kInf;
}

double neg_log_likelihood(const ReturnSeries& returns, std::span<const double> theta) {
  return neg_log_likelihood(std::span<const double>(returns.returns), theta);
}

std::vector<std::array<double, GjrParams::kCount>> starting_points(
    std::span<const double> returns, const FitOptions& opts) {
  const auto mom = sample_moments(returns);
  const ThetaMap map = ThetaMap::for_returns(returns);
  GjrParams base;
  base.mu = mom.mean;
  base.phi = 0.0;
  base.omega = 0.05 * mom.variance;
  base.alpha = 0.05;
  base.gamma = 0.0;
  base.beta = 0.90;
  base.m = 6.0;
  base.nu = 0.0;

  static constexpr std::array<double, GjrParams::kCount> spread = {0.05, 0.3, 0.5, 0.5,
                                                                   0.5,  0.1, 0.5, 0.3};
  std::vector<std::array<double, GjrParams::kCount>> starts;
  const auto origin = map.to_theta(base);
  starts.push_back(origin);
  for (int k = 1; k < opts.starts; ++k) {
    rng::CounterRng gen(opts.start_seed, static_cast<std::uint64_t>(k));
    auto theta = origin;
    for (std::size_t j = 0; j < theta.size(); ++j) theta[j] += spread[j] * standard_normal(gen);
    starts.push_back(theta);
  }
  return starts;
}

FitResult fit(const ReturnSeries& returns, const FitOptions& opts) {
  const std::span<const double> r(returns.returns);
  if (r.size() < kMinFitLength)
    throw Error(ErrorCode::TooShort, "fitting 8 parameters needs at least " +
                                         std::to_string(kMinFitLength) + " returns");
  if (opts.starts < 1) throw Error(ErrorCode::DomainError, "fit needs at least one start");
  opts.optimizer.validate();

  const ThetaMap map = ThetaMap::for_returns(r);
  const numerics::Objective objective = [r](std::span<const double> theta) {
    return neg_log_likelihood(r, theta);
  };

  FitResult best;
  best.asset_id = returns.asset_id;
  best.nll = kInf;
  std::vector<double> best_theta;
  int total_iterations = 0;
  int total_evaluations = 0;

  const auto starts = starting_points(r, opts);
  for (std::size_t k = 0; k < starts.size(); ++k) {
    std::vector<double> x(starts[k].begin(), starts[k].end());
    double value = objective(x);
    if (!std::isfinite(value)) continue;
    bool converged = false;
    for (int round = 0; round <= opts.max_restarts; ++round) {
      const auto res = numerics::minimize_simplex(objective, x, opts.optimizer);
      total_iterations += res.iterations;
      total_evaluations += res.evaluations;
      const double gain = value - res.value;
      x = res.argmin;
      value = res.value;
      converged = res.converged;
      if (gain <= opts.optimizer.tolerance_f * (1.0 + std::fabs(value))) break;
    }
    if (value < best.nll) {
      best.nll = value;
      best.converged = converged;
      best.best_start = static_cast<int>(k);
      best_theta = x;
    }
  }
  if (best_theta.empty())
    throw Error(ErrorCode::NonFiniteObjective, "no starting point has a finite likelihood");

  best.params = map.to_params(best_theta);
  best.iterations = total_iterations;
  best.evaluations = total_evaluations;
  best.filter = filter(r, best.params);
  best.residual_diagnostics =
      diagnostics::describe(best.filter.z, opts.diagnostic_lags, diagnostics::SquaresBasis::Raw);

  const Piv law(best.params.m, best.params.nu);
  const auto moments = law.standardized_moments();
  best.innovation_mean = moments.mean;
  best.innovation_variance = moments.variance;

  if (!best.converged) best.warnings.push_back("optimizer stopped before meeting its tolerances");
  if (best.params.persistence() >= 1.0) {
    std::ostringstream msg;
    msg << "alpha + beta + gamma/2 = " << best.params.persistence()
        << " >= 1: no finite unconditional variance";
    best.warnings.push_back(msg.str());
  }
  return best;
}

FitResult fit(const ReturnSeries& returns, const numerics::OptimizerOptions& optimizer) {
  FitOptions opts;
  opts.optimizer = optimizer;
  return fit(returns, opts);
}

void simulate_into(const GjrParams& params, const SimState& state,
                   std::span<const double> pool, rng::CounterRng& gen, std::span<double> out) {
  if (pool.empty()) throw Error(ErrorCode::EmptyPool, "residual pool is empty");
  double sigma2 = state.sigma2;
  double eps = state.eps;
  double r = state.last_return;
  for (double& slot : out) {
    sigma2 = params.next_variance(eps, sigma2);
    const double z = pool[gen.below(pool.size())];
    eps = std::sqrt(sigma2) * z;
    r = params.mu + params.phi * r + eps;
    slot = r;
  }
}

std::vector<double> simulate(const GjrParams& params, const SimState& state,
                             std::span<const double> pool, std::size_t horizon,
                             std::uint64_t seed) {
  if (horizon < 1) throw Error(ErrorCode::DomainError, "horizon must be at least 1");
  std::vector<double> path(horizon);
  rng::CounterRng gen(seed, 0);
  simulate_into(params, state, pool, gen, path);
  return path;
}

double simulate_cumulative(const GjrParams& params, const SimState& state,
                           std::span<const double> pool, std::size_t horizon,
                           rng::CounterRng& gen) {
  if (pool.empty()) throw Error(ErrorCode::EmptyPool, "residual pool is empty");
  double sigma2 = state.sigma2;
  double eps = state.eps;
  double r = state.last_return;
  double total = 0.0;
  for (std::size_t h = 0; h < horizon; ++h) {
    sigma2 = params.next_variance(eps, sigma2);
    eps = std::sqrt(sigma2) * pool[gen.below(pool.size())];
    r = params.mu + params.phi * r + eps;
    total += r;
  }
  return total;
}

} // namespace fhsrisk::garch
