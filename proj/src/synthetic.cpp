#include "fhsrisk/synthetic.hpp"

#include "fhsrisk/error.hpp"
#include "fhsrisk/numerics.hpp"
#include "fhsrisk/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace fhsrisk::synthetic {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr std::size_t kGridSize = 4096;

} // namespace

std::vector<double> piv_draws(const Piv& law, std::size_t n, std::uint64_t seed) {
  // In t = atan(sigma_hat z + mu_hat) the density is C cos^(m-1)(t) exp(-nu t)
  // on a bounded interval, which tabulates cleanly.
  const double power = law.m() - 1.0;
  const double nu = law.nu();
  const double scale = std::exp(law.ln_norm() - std::log(law.sigma_hat()));
  auto density = [=](double t) {
    const double c = std::cos(t);
    return c <= 0.0 ? 0.0 : scale * std::exp(power * std::log(c) - nu * t);
  };

  std::vector<double> grid(kGridSize + 1);
  std::vector<double> cdf(kGridSize + 1, 0.0);
  for (std::size_t j = 0; j <= kGridSize; ++j)
    grid[j] = -kHalfPi + std::numbers::pi * static_cast<double>(j) / kGridSize;
  for (std::size_t j = 1; j <= kGridSize; ++j)
    cdf[j] = cdf[j - 1] + numerics::integrate_adaptive(density, grid[j - 1], grid[j], 1e-14);
  const double total = cdf.back();
  for (double& c : cdf) c /= total;

  std::vector<double> out(n);
  rng::CounterRng gen(seed, 0);
  for (double& draw : out) {
    const double u = gen.uniform_open();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t j = std::clamp<std::size_t>(it - cdf.begin(), 1, kGridSize) - 1;
    const double width = cdf[j + 1] - cdf[j];
    const double frac = width > 0.0 ? (u - cdf[j]) / width : 0.5;
    double t = grid[j] + frac * (grid[j + 1] - grid[j]);
    for (int step = 0; step < 3; ++step) {
      const double f = density(t);
      if (!(f > 0.0)) break;
      const double mass = t > grid[j]
                              ? numerics::integrate_adaptive(density, grid[j], t, 1e-15) / total
                              : -numerics::integrate_adaptive(density, t, grid[j], 1e-15) / total;
      t -= (cdf[j] + mass - u) / (f / total);
      t = std::clamp(t, grid[j], grid[j + 1]);
    }
    t = std::clamp(t, -kHalfPi + 1e-15, kHalfPi - 1e-15);
    draw = (std::tan(t) - law.mu_hat()) / law.sigma_hat();
  }
  return out;
}

std::vector<double> gjr_returns(const garch::GjrParams& params, std::size_t n,
                                std::uint64_t seed, std::size_t burn_in) {
  params.validate();
  const Piv law(params.m, params.nu);
  const auto z = piv_draws(law, n + burn_in, seed);

  double sigma2 = params.omega / std::max(1.0 - params.persistence(), 0.02);
  double eps = 0.0;
  double r = params.mu / (1.0 - params.phi);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t t = 0; t < n + burn_in; ++t) {
    if (t > 0) sigma2 = params.next_variance(eps, sigma2);
    eps = std::sqrt(sigma2) * z[t];
    r = params.mu + params.phi * r + eps;
    if (t >= burn_in) out.push_back(r);
  }
  return out;
}

PriceSeries prices_from_returns(std::string asset_id, const std::vector<double>& returns,
                                Date start, double start_price, Calendar calendar) {
  if (!(start_price > 0.0)) throw Error(ErrorCode::NonPositivePrice, "start price must be > 0");
  auto is_session = [calendar](Date d) {
    if (calendar == Calendar::Daily) return true;
    const std::chrono::weekday wd{d};
    return wd != std::chrono::Saturday && wd != std::chrono::Sunday;
  };

  PriceSeries out;
  out.asset_id = std::move(asset_id);
  Date d = start;
  while (!is_session(d)) d += std::chrono::days{1};
  double log_price = std::log(start_price);
  out.dates.push_back(d);
  out.closes.push_back(start_price);
  for (double r : returns) {
    do {
      d += std::chrono::days{1};
    } while (!is_session(d));
    log_price += r;
    out.dates.push_back(d);
    out.closes.push_back(std::exp(log_price));
  }
  return out;
}

} // namespace fhsrisk::synthetic
