#include <catch_amalgamated.hpp>

#include "fhsrisk/error.hpp"
#include "fhsrisk/gjr_garch.hpp"
#include "fhsrisk/pearson4.hpp"
#include "fhsrisk/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace fhsrisk;
using namespace fhsrisk::garch;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected fhsrisk::Error");
  return ErrorCode::DomainError;
}

ReturnSeries as_series(std::vector<double> r, std::string id = "syn") {
  ReturnSeries s;
  s.asset_id = std::move(id);
  s.dates.resize(r.size());
  s.returns = std::move(r);
  return s;
}

std::vector<double> normal_returns(std::size_t n, double sd, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, sd);
  std::vector<double> r(n);
  for (double& v : r) v = dist(gen);
  return r;
}

const GjrParams kBtcLike{0.002, -0.09, 1.3e-5, 0.27, -0.22, 0.85, 3.24, 0.24};

} // namespace

TEST_CASE("parameter validation") {
  CHECK(kBtcLike.valid());
  CHECK_THAT(kBtcLike.persistence(), WithinAbs(0.27 + 0.85 - 0.11, 1e-15));
  auto bad = kBtcLike;
  bad.omega = 0.0;
  CHECK_FALSE(bad.valid());
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::InvalidParameters);
  bad = kBtcLike;
  bad.gamma = -0.3;
  CHECK_FALSE(bad.valid());
  bad = kBtcLike;
  bad.m = 2.0;
  CHECK_FALSE(bad.valid());
  bad = kBtcLike;
  bad.phi = 1.0;
  CHECK_FALSE(bad.valid());
}

TEST_CASE("filter follows the recursion by hand") {
  const std::vector<double> r{0.01, -0.02, 0.015, -0.005, 0.03};
  const GjrParams p{0.001, 0.2, 2e-5, 0.1, 0.15, 0.8, 5.0, -0.4};
  const auto out = filter(r, p);
  REQUIRE(out.sigma2.size() == r.size() - 1);
  REQUIRE(out.eps.size() == r.size() - 1);
  REQUIRE(out.z.size() == r.size() - 1);

  double mean = 0.0;
  for (double v : r) mean += v;
  mean /= 5.0;
  double var = 0.0;
  for (double v : r) var += (v - mean) * (v - mean);
  var /= 4.0;

  const Piv law(p.m, p.nu);
  double s2 = var;
  double e = r[0] - p.mu - p.phi * mean;
  double ll = 0.0;
  for (std::size_t t = 1; t < r.size(); ++t) {
    const double load = e < 0.0 ? p.alpha + p.gamma : p.alpha;
    s2 = p.omega + load * e * e + p.beta * s2;
    e = r[t] - p.mu - p.phi * r[t - 1];
    CHECK_THAT(out.sigma2[t - 1], WithinRel(s2, 1e-14));
    CHECK_THAT(out.eps[t - 1], WithinRel(e, 1e-14));
    ll += law.log_pdf(e / std::sqrt(s2)) - 0.5 * std::log(s2);
  }
  for (std::size_t i = 0; i < out.z.size(); ++i)
    CHECK(out.z[i] == out.eps[i] / std::sqrt(out.sigma2[i]));
  CHECK_THAT(out.log_likelihood, WithinRel(ll, 1e-12));
  CHECK(out.last_return == r.back());

  const auto state = terminal_state(out);
  CHECK(state.sigma2 == out.sigma2.back());
  CHECK(state.eps == out.eps.back());
}

TEST_CASE("constant variance when the ARCH and GARCH terms vanish") {
  const auto r = normal_returns(300, 0.01, 1);
  const GjrParams p{0.0, 0.1, 3e-4, 0.0, 0.0, 0.0, 6.0, 0.0};
  const auto out = filter(r, p);
  for (double s2 : out.sigma2) CHECK(s2 == 3e-4);
}

TEST_CASE("unconditional variance of a simulated path") {
  // omega / (1 - a - beta) = 0.01 / 0.1 = 0.1
  const GjrParams p{0.0, 0.0, 0.01, 0.1, 0.0, 0.8, 8.0, 0.0};
  const auto r = synthetic::gjr_returns(p, 100'000, 77, 1000);
  double mean = 0.0;
  for (double v : r) mean += v;
  mean /= static_cast<double>(r.size());
  double var = 0.0;
  for (double v : r) var += (v - mean) * (v - mean);
  var /= static_cast<double>(r.size() - 1);
  CHECK_THAT(var, WithinRel(0.1, 0.02));
}

TEST_CASE("news impact asymmetry") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 500; ++rep) {
    GjrParams p = kBtcLike;
    p.alpha = 0.3 * u(gen);
    p.gamma = -p.alpha + 0.6 * u(gen);
    p.beta = 0.95 * u(gen);
    const double shock = 0.1 * u(gen) + 1e-4;
    const double prev = 1e-4 * (0.1 + u(gen));
    const double up = p.next_variance(shock, prev);
    const double down = p.next_variance(-shock, prev);
    CHECK_THAT(down - up, WithinAbs(p.gamma * shock * shock, 1e-15));
    if (p.gamma > 0.0) CHECK(down > up);
  }
}

TEST_CASE("filter positivity over random valid parameters") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::student_t_distribution<double> t3(3.0);
  for (int rep = 0; rep < 200; ++rep) {
    GjrParams p;
    p.mu = 0.01 * (u(gen) - 0.5);
    p.phi = 1.9 * (u(gen) - 0.5);
    p.omega = std::exp(-14.0 + 8.0 * u(gen));
    p.alpha = 0.5 * u(gen);
    p.gamma = -p.alpha + u(gen);
    p.beta = u(gen);
    p.m = 2.05 + 20.0 * u(gen);
    p.nu = 4.0 * (u(gen) - 0.5);
    std::vector<double> r(60);
    const double scale = std::exp(-6.0 + 4.0 * u(gen));
    for (double& v : r) v = scale * t3(gen);
    const auto out = filter(r, p);
    for (double s2 : out.sigma2) CHECK(s2 > 0.0);
    CHECK(std::isfinite(out.log_likelihood));
  }
}

TEST_CASE("likelihood consistency between filter and theta objective") {
  const auto r = synthetic::gjr_returns(kBtcLike, 704, 5, 100);
  const auto map = ThetaMap::for_returns(r);
  const auto theta = map.to_theta(kBtcLike);
  const auto back = map.to_params(theta);
  for (std::size_t i = 0; i < GjrParams::kCount; ++i)
    CHECK_THAT(back.to_array()[i], WithinRel(kBtcLike.to_array()[i], 1e-12));
  const double nll = neg_log_likelihood(r, theta);
  CHECK_THAT(filter(r, back).log_likelihood, WithinAbs(-nll, 1e-10));
  CHECK(log_likelihood(r, back) == filter(r, back).log_likelihood);
}

TEST_CASE("objective domain guard") {
  const auto r = normal_returns(100, 0.01, 2);
  const auto map = ThetaMap::for_returns(r);
  auto theta = map.to_theta(GjrParams{});
  theta[6] = -800.0;  // exp underflows, so m collapses onto 2
  CHECK(neg_log_likelihood(r, theta) == std::numeric_limits<double>::infinity());
  theta = map.to_theta(GjrParams{});
  theta[2] = std::numeric_limits<double>::quiet_NaN();
  CHECK(neg_log_likelihood(r, theta) == std::numeric_limits<double>::infinity());
  GjrParams bad;
  bad.m = 1.5;
  CHECK(log_likelihood(r, bad) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("profile likelihood in omega peaks at the sample variance") {
  const auto r = normal_returns(5000, 0.02, 9);
  double mean = 0.0;
  for (double v : r) mean += v;
  mean /= static_cast<double>(r.size());
  double var = 0.0;
  for (double v : r) var += (v - mean) * (v - mean);
  var /= static_cast<double>(r.size() - 1);

  const auto map = ThetaMap::for_returns(r);
  GjrParams p{mean, 0.0, var, 0.0, 0.0, 0.0, 200.0, 0.0};
  auto theta = map.to_theta(p);
  theta[3] = theta[4] = theta[5] = -60.0;  // a, a + gamma, beta effectively zero

  double best_omega = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 200; ++i) {
    const double omega = var * (0.5 + i * 0.005);
    theta[2] = std::log(omega);
    const double v = neg_log_likelihood(r, theta);
    if (v < best) {
      best = v;
      best_omega = omega;
    }
  }
  CHECK_THAT(best_omega, WithinRel(var, 0.02));
}

TEST_CASE("fit errors") {
  CHECK(code_of([] { fit(as_series(normal_returns(49, 0.01, 1))); }) == ErrorCode::TooShort);
  CHECK(code_of([] { filter(std::vector<double>{0.1, 0.2}, GjrParams{}); }) ==
        ErrorCode::TooShort);
}

TEST_CASE("fit on BTC-like synthetic data") {
  for (std::uint64_t seed : {101u, 202u, 303u}) {
    const auto r = synthetic::gjr_returns(kBtcLike, 704, seed, 200);
    const auto result = fit(as_series(r));
    const double truth_nll = -log_likelihood(r, kBtcLike);
    CHECK(result.nll <= truth_nll);
    CHECK(result.params.valid());
    CHECK_THAT(result.nll, WithinAbs(-result.filter.log_likelihood, 1e-8));
    CHECK(result.filter.z.size() == r.size() - 1);
    CHECK(result.residual_diagnostics.n == r.size() - 1);
    CHECK_THAT(result.innovation_variance, WithinAbs(1.0, 1e-6));
    CHECK(result.params.beta > 0.6);
    CHECK(result.params.gamma < 0.0);
  }
}

TEST_CASE("fit never ends above its default start") {
  const auto r = synthetic::gjr_returns(kBtcLike, 300, 4, 100);
  const auto starts = starting_points(r, FitOptions{});
  REQUIRE(starts.size() == 5);
  const auto result = fit(as_series(r));
  for (const auto& s : starts) {
    const double v = neg_log_likelihood(r, s);
    if (std::isfinite(v)) CHECK(result.nll <= v);
  }
}

TEST_CASE("constant-variance data yields negligible ARCH terms") {
  const GjrParams flat{0.0005, 0.0, 1e-4, 0.0, 0.0, 0.0, 6.0, 0.0};
  const auto r = synthetic::gjr_returns(flat, 704, 55, 0);
  const auto result = fit(as_series(r));
  CHECK(result.params.alpha < 0.05);
  CHECK(std::fabs(result.params.gamma) < 0.05);
  CHECK(result.nll <= -log_likelihood(r, flat));
}

TEST_CASE("refit is bit-identical") {
  const auto r = as_series(synthetic::gjr_returns(kBtcLike, 400, 8, 100));
  const auto a = fit(r);
  const auto b = fit(r);
  CHECK(a.params == b.params);
  CHECK(a.nll == b.nll);
  CHECK(a.filter.z == b.filter.z);
  CHECK(a.best_start == b.best_start);
}

TEST_CASE("persistence warning") {
  const auto r = synthetic::gjr_returns(kBtcLike, 704, 12, 100);
  const auto result = fit(as_series(r));
  const bool flagged = std::any_of(result.warnings.begin(), result.warnings.end(),
                                   [](const std::string& w) { return w.find(">= 1") != w.npos; });
  CHECK(flagged == (result.params.persistence() >= 1.0));
}

TEST_CASE("simulate with a zero pool follows the AR(1) mean path") {
  const GjrParams p{0.001, 0.4, 1e-5, 0.1, 0.05, 0.85, 5.0, 0.0};
  const SimState state{2e-4, -0.01, 0.03};
  const std::vector<double> pool{0.0};
  const auto path = simulate(p, state, pool, 10, 42);
  double r = state.last_return;
  for (double v : path) {
    r = p.mu + p.phi * r;
    CHECK(v == r);
  }
}

TEST_CASE("one-step constant-variance simulation is the shifted, scaled pool") {
  const GjrParams p{0.002, 0.0, 4e-4, 0.0, 0.0, 0.0, 5.0, 0.0};
  const SimState state{1e-3, 0.02, -0.01};
  std::vector<double> pool(1000);
  std::mt19937_64 gen(6);
  std::student_t_distribution<double> t4(4.0);
  for (double& z : pool) z = t4(gen);

  std::vector<double> images(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i)
    images[i] = p.mu + std::sqrt(p.omega) * pool[i];
  std::sort(images.begin(), images.end());

  std::vector<double> draws;
  for (std::uint64_t seed = 0; seed < 20'000; ++seed) {
    const double v = simulate(p, state, pool, 1, seed).front();
    draws.push_back(v);
    CHECK(std::binary_search(images.begin(), images.end(), v));
  }
  std::sort(draws.begin(), draws.end());
  // Quantile of the draws against the pool quantile, allowing three binomial
  // standard errors in rank.
  const double level = 0.05;
  const double n = static_cast<double>(draws.size());
  const double rank_se = std::sqrt(level * (1.0 - level) * n);
  const double q = draws[static_cast<std::size_t>(level * n) - 1];
  const auto lo = images[static_cast<std::size_t>(
      std::floor((level - 3.0 * rank_se / n) * images.size()))];
  const auto hi = images[static_cast<std::size_t>(
      std::ceil((level + 3.0 * rank_se / n) * images.size()))];
  CHECK(q >= lo);
  CHECK(q <= hi);
}

TEST_CASE("simulate determinism and errors") {
  const SimState state{2e-4, -0.01, 0.03};
  const std::vector<double> pool{-1.5, -0.2, 0.3, 1.1, 0.7};
  CHECK(simulate(kBtcLike, state, pool, 10, 7) == simulate(kBtcLike, state, pool, 10, 7));
  CHECK(simulate(kBtcLike, state, pool, 10, 7) != simulate(kBtcLike, state, pool, 10, 8));
  CHECK(code_of([&] { simulate(kBtcLike, state, std::vector<double>{}, 10, 7); }) ==
        ErrorCode::EmptyPool);

  rng::CounterRng gen(7, 0);
  const double total = simulate_cumulative(kBtcLike, state, pool, 10, gen);
  double sum = 0.0;
  for (double v : simulate(kBtcLike, state, pool, 10, 7)) sum += v;
  CHECK(total == sum);
}
