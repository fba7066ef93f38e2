#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fhsrisk/diagnostics.hpp"
#include "fhsrisk/market_data.hpp"
#include "fhsrisk/numerics.hpp"
#include "fhsrisk/rng.hpp"

namespace fhsrisk::garch {

/// AR(1) mean with GJR(1,1) variance and standardized Pearson IV innovations:
///   r_t      = mu + phi r_{t-1} + eps_t,   eps_t = sigma_t z_t
///   sigma2_t = omega + (alpha + gamma 1{eps_{t-1} < 0}) eps_{t-1}^2 + beta sigma2_{t-1}
struct GjrParams {
  double mu = 0.0;
  double phi = 0.0;
  double omega = 1e-5;
  double alpha = 0.05;
  double gamma = 0.0;
  double beta = 0.9;
  double m = 6.0;
  double nu = 0.0;

  static constexpr std::size_t kCount = 8;
  static constexpr std::array<const char*, kCount> kNames = {"mu", "phi",  "omega", "alpha",
                                                             "gamma", "beta", "m", "nu"};

  std::array<double, kCount> to_array() const { return {mu, phi, omega, alpha, gamma, beta, m, nu}; }
  static GjrParams from_array(std::span<const double> v);

  bool valid() const noexcept;
  /// Throws InvalidParameters naming the first violated constraint.
  void validate() const;

  /// alpha + beta + gamma / 2; above one the variance has no finite
  /// unconditional level under symmetric shocks.
  double persistence() const noexcept { return alpha + beta + 0.5 * gamma; }

  /// Next conditional variance given the previous shock and variance.
  double next_variance(double prev_eps, double prev_sigma2) const noexcept {
    const double load = prev_eps < 0.0 ? alpha + gamma : alpha;
    return omega + load * prev_eps * prev_eps + beta * prev_sigma2;
  }

  bool operator==(const GjrParams&) const = default;
};

/// Filtered paths over t = 2..T (the first return only conditions the AR lag).
struct FilterOutput {
  std::vector<double> sigma2;
  std::vector<double> eps;
  std::vector<double> z;
  double log_likelihood = 0.0;
  double last_return = 0.0;  // r_T, the AR(1) lag for the first forecast day
};

/// End-of-sample state a simulation starts from.
struct SimState {
  double sigma2;
  double eps;
  double last_return;
};

SimState terminal_state(const FilterOutput& out);

/// Runs the recursion seeded with sigma2_1 = sample variance of the returns
/// and eps_1 = r_1 - mu - phi * mean(r). Throws TooShort below 3 returns,
/// InvalidParameters on constraint violations.
FilterOutput filter(std::span<const double> returns, const GjrParams& params);
FilterOutput filter(const ReturnSeries& returns, const GjrParams& params);

/// Log-likelihood only; no path storage. Returns -inf when the parameters
/// are invalid or the recursion degenerates.
double log_likelihood(std::span<const double> returns, const GjrParams& params);

/// Unconstrained coordinates used by the optimizer:
///   theta = (mu / s, atanh phi, ln omega, ln alpha, ln(alpha + gamma), ln beta, ln(m - 2), nu)
/// where s is the sample standard deviation of the returns (a fixed scale so
/// the mean shares step sizes with the other coordinates).
struct ThetaMap {
  double mu_scale = 1.0;

  static ThetaMap for_returns(std::span<const double> returns);
  GjrParams to_params(std::span<const double> theta) const;
  std::array<double, GjrParams::kCount> to_theta(const GjrParams& params) const;
};

/// -log L at the back-transformed parameters, +inf when they fall outside
/// the model domain (e.g. m collapses onto 2).
double neg_log_likelihood(std::span<const double> returns, std::span<const double> theta);
double neg_log_likelihood(const ReturnSeries& returns, std::span<const double> theta);

struct FitOptions {
  numerics::OptimizerOptions optimizer{.max_iterations = 4000,
                                       .tolerance_f = 1e-9,
                                       .tolerance_x = 1e-7,
                                       .initial_simplex_scale = 0.25};
  int starts = 5;
  int max_restarts = 6;
  std::uint64_t start_seed = 0x5eed'6a2c'0f1e'2017ULL;
  int diagnostic_lags = 12;
};

struct FitResult {
  std::string asset_id;
  GjrParams params;
  FilterOutput filter;
  double nll = 0.0;
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
  int best_start = 0;
  diagnostics::DiagnosticsRow residual_diagnostics;
  /// Quadrature mean / variance of the fitted innovation law.
  double innovation_mean = 0.0;
  double innovation_variance = 1.0;
  std::vector<std::string> warnings;
};

/// The default start plus `starts - 1` seeded perturbations of it, in theta space.
std::vector<std::array<double, GjrParams::kCount>> starting_points(
    std::span<const double> returns, const FitOptions& opts);

/// Multi-start Nelder-Mead maximum likelihood. Each start is restarted from
/// its own optimum until the simplex stops improving. The best NLL wins,
/// ties going to the lower start index. Throws TooShort below 50 returns.
FitResult fit(const ReturnSeries& returns, const FitOptions& opts = {});
FitResult fit(const ReturnSeries& returns, const numerics::OptimizerOptions& optimizer);

/// Writes `out.size()` simulated daily log returns forward from `state`,
/// bootstrapping innovations uniformly with replacement from `pool`.
/// Throws EmptyPool.
void simulate_into(const GjrParams& params, const SimState& state,
                   std::span<const double> pool, rng::CounterRng& gen, std::span<double> out);

std::vector<double> simulate(const GjrParams& params, const SimState& state,
                             std::span<const double> pool, std::size_t horizon,
                             std::uint64_t seed);

/// Cumulative log return of one simulated path, without storing it.
double simulate_cumulative(const GjrParams& params, const SimState& state,
                           std::span<const double> pool, std::size_t horizon,
                           rng::CounterRng& gen);

} // namespace fhsrisk::garch
