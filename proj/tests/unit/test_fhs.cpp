#include <catch_amalgamated.hpp>

#include "fhsrisk/error.hpp"
#include "fhsrisk/fhs.hpp"
#include "fhsrisk/pearson4.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace fhsrisk;
using namespace fhsrisk::fhs;
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

// Independent tail measures: full sort, direct integer indexing.
struct BruteTail {
  double var;
  double es;
};

BruteTail brute_tail(std::vector<double> x, double level) {
  std::sort(x.begin(), x.end());
  const auto k = static_cast<std::size_t>(std::floor(level * x.size() + 1e-9));
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += x[i];
  return {-x[k - 1], -sum / static_cast<double>(k)};
}

// Quantiles of a Pearson IV law on the grid p_i = (i + 1/2) / n, marched
// upward with Newton steps on the density and re-anchored to inv_cdf every
// `anchor` points.
std::vector<double> quantile_grid(const Piv& law, std::size_t n, std::size_t anchor) {
  std::vector<double> z(n);
  double zc = 0.0;
  double pc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    if (i % anchor == 0) {
      zc = law.inv_cdf(p);
      pc = p;
      z[i] = zc;
      continue;
    }
    double x = zc;
    for (int step = 0; step < 4; ++step) {
      // Composite Simpson: deep-tail steps are long.
      constexpr int kPanels = 16;
      const double h = (x - zc) / kPanels;
      double mass = law.pdf(zc) + law.pdf(x);
      for (int j = 1; j < kPanels; ++j) mass += (j % 2 ? 4.0 : 2.0) * law.pdf(zc + j * h);
      mass *= h / 3.0;
      x -= (mass - (p - pc)) / law.pdf(x);
    }
    zc = x;
    pc = p;
    z[i] = x;
  }
  return z;
}

garch::FitResult manual_fit(const garch::GjrParams& p, std::vector<double> z, double sigma2_T,
                            double eps_T, double r_T) {
  garch::FitResult fit;
  fit.asset_id = "manual";
  fit.params = p;
  fit.filter.z = std::move(z);
  fit.filter.sigma2.assign(fit.filter.z.size(), sigma2_T);
  fit.filter.eps.assign(fit.filter.z.size(), eps_T);
  fit.filter.last_return = r_T;
  return fit;
}

} // namespace

TEST_CASE("tail count uses the integer part") {
  CHECK(tail_count(0.02, 100) == 2);
  CHECK(tail_count(0.01, 100000) == 1000);
  CHECK(tail_count(0.025, 100000) == 2500);
  CHECK(tail_count(0.1, 100000) == 10000);
  CHECK(tail_count(0.05, 10000) == 500);
  CHECK(tail_count(0.015, 100) == 1);
  CHECK(tail_count(0.009, 100) == 0);
}

TEST_CASE("VaR and ES on hand-built samples") {
  SECTION("k = 2") {
    std::vector<double> x{-0.10, -0.05, 0.00};
    while (x.size() < 100) x.push_back(0.05 + 0.001 * x.size());
    CHECK(var_from_sample(x, 0.02) == 0.05);
  }
  SECTION("two worst outcomes") {
    std::vector<double> x(98, 0.01);
    x.push_back(-0.20);
    x.push_back(-0.10);
    CHECK_THAT(es_from_sample(x, 0.02), WithinAbs(0.15, 1e-15));
  }
  SECTION("uniform grid") {
    std::vector<double> x;
    for (int i = 0; i < 100; ++i) x.push_back(-1.0 + 0.01 * i);
    std::shuffle(x.begin(), x.end(), std::mt19937_64(1));
    CHECK_THAT(es_from_sample(x, 0.05), WithinAbs(0.98, 1e-14));
    CHECK_THAT(var_from_sample(x, 0.05), WithinAbs(0.96, 1e-14));
  }
  SECTION("k = 1 makes ES equal VaR") {
    std::vector<double> x{0.3, -0.7, 0.1, 0.2, -0.1};
    while (x.size() < 100) x.push_back(0.5);
    CHECK(es_from_sample(x, 0.01) == var_from_sample(x, 0.01));
    CHECK(var_from_sample(x, 0.01) == 0.7);
  }
  SECTION("gains are not clipped") {
    std::vector<double> x(200);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.01 + 0.001 * i;
    CHECK(var_from_sample(x, 0.05) < 0.0);
    CHECK(es_from_sample(x, 0.05) < 0.0);
  }
  SECTION("errors") {
    const std::vector<double> x(50, 0.0);
    CHECK(code_of([&] { var_from_sample(x, 0.01); }) == ErrorCode::TooFewTrials);
    CHECK(code_of([&] { es_from_sample(x, 0.01); }) == ErrorCode::TooFewTrials);
    CHECK(code_of([&] { var_from_sample(x, 0.0); }) == ErrorCode::ProbabilityOutOfDomain);
  }
}

TEST_CASE("brute-force oracle on random samples") {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<std::size_t> size(50, 500);
  std::student_t_distribution<double> t3(3.0);
  const std::vector<double> levels{0.10, 0.05, 0.025, 0.02};
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> x(size(gen));
    for (double& v : x) v = 0.02 * t3(gen);
    double prev_var = -1e300, prev_es = -1e300;
    for (double level : levels) {
      const auto oracle = brute_tail(x, level);
      const double var = var_from_sample(x, level);
      const double es = es_from_sample(x, level);
      CHECK(var == oracle.var);
      CHECK(es == oracle.es);
      CHECK(es >= var);
      CHECK(var >= prev_var);
      CHECK(es >= prev_es);
      prev_var = var;
      prev_es = es;
    }
  }
}

TEST_CASE("translation and positive homogeneity") {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<std::int64_t> tick(-(1 << 20), 1 << 20);
  std::uniform_int_distribution<std::size_t> size(50, 500);
  for (int rep = 0; rep < 100; ++rep) {
    // Dyadic values and a power-of-two tail count keep every sum exact.
    std::vector<double> x(size(gen));
    for (double& v : x) v = std::ldexp(static_cast<double>(tick(gen)), -24);
    std::size_t k = 1;
    while (4 * k <= x.size()) k *= 2;
    const double level = static_cast<double>(k) / static_cast<double>(x.size());
    const double c = std::ldexp(static_cast<double>(tick(gen)), -22);

    auto shifted = x;
    for (double& v : shifted) v += c;
    CHECK(var_from_sample(shifted, level) == var_from_sample(x, level) - c);
    CHECK(es_from_sample(shifted, level) == es_from_sample(x, level) - c);

    for (double lambda : {0.25, 2.0, 8.0}) {
      auto scaled = x;
      for (double& v : scaled) v *= lambda;
      CHECK(var_from_sample(scaled, level) == lambda * var_from_sample(x, level));
      CHECK(es_from_sample(scaled, level) == lambda * es_from_sample(x, level));
    }
    const double lambda = 1.37;
    auto scaled = x;
    for (double& v : scaled) v *= lambda;
    CHECK(var_from_sample(scaled, level) == lambda * var_from_sample(x, level));
    CHECK_THAT(es_from_sample(scaled, level),
               WithinRel(lambda * es_from_sample(x, level), 1e-14));
  }
}

TEST_CASE("risk spec validation") {
  RiskSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.trials = 999;
  CHECK(code_of([&] { spec.validate(); }) == ErrorCode::InvalidSpec);
  spec = RiskSpec{};
  spec.horizon = 0;
  CHECK(code_of([&] { spec.validate(); }) == ErrorCode::InvalidSpec);
  spec = RiskSpec{};
  spec.levels = {0.6};
  CHECK(code_of([&] { spec.validate(); }) == ErrorCode::InvalidSpec);
  spec = RiskSpec{};
  spec.levels = {0.0005};
  spec.trials = 1000;
  CHECK(code_of([&] { spec.validate(); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("degenerate residual pool gives the mean path") {
  const garch::GjrParams p{0.001, 0.3, 1e-5, 0.1, 0.05, 0.85, 5.0, 0.0};
  const garch::SimState state{2e-4, -0.01, 0.02};
  RiskSpec spec;
  spec.trials = 2000;
  spec.seed = 5;
  const std::vector<double> pool{0.0};
  const auto sample = run_fhs(p, state, pool, spec, 1);
  REQUIRE(sample.cum_returns.size() == 2000);
  double r = state.last_return;
  double total = 0.0;
  for (std::size_t h = 0; h < spec.horizon; ++h) {
    r = p.mu + p.phi * r;
    total += r;
  }
  for (double v : sample.cum_returns) CHECK(v == total);
  CHECK(code_of([&] { run_fhs(p, state, std::vector<double>{}, spec, 1); }) ==
        ErrorCode::EmptyResiduals);
}

TEST_CASE("one-step constant-variance FHS quantile") {
  const garch::GjrParams p{0.0005, 0.0, 2.5e-4, 0.0, 0.0, 0.0, 5.0, 0.0};
  const garch::SimState state{1e-3, 0.01, 0.0};
  std::vector<double> pool(5000);
  std::mt19937_64 gen(17);
  std::student_t_distribution<double> t5(5.0);
  for (double& z : pool) z = t5(gen);

  RiskSpec spec;
  spec.horizon = 1;
  spec.trials = 20000;
  spec.seed = 31;
  const auto sample = run_fhs(p, state, pool, spec, 1);

  std::vector<double> images(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) images[i] = p.mu + std::sqrt(p.omega) * pool[i];
  std::sort(images.begin(), images.end());

  const double level = 0.05;
  const double n = static_cast<double>(spec.trials);
  const double rank_band = 3.0 * std::sqrt(level * (1.0 - level) / n);
  const double lo = images[static_cast<std::size_t>((level - rank_band) * images.size())];
  const double hi = images[static_cast<std::size_t>((level + rank_band) * images.size())];
  const double q = -var_from_sample(sample, level);
  CHECK(q >= lo);
  CHECK(q <= hi);
}

TEST_CASE("run_fhs is independent of the thread count") {
  const garch::GjrParams p{0.002, -0.09, 1.3e-5, 0.27, -0.22, 0.85, 3.24, 0.24};
  const garch::SimState state{4e-4, -0.02, -0.018};
  std::vector<double> pool(700);
  std::mt19937_64 gen(8);
  std::normal_distribution<double> nd;
  for (double& z : pool) z = nd(gen);
  RiskSpec spec;
  spec.trials = 10007;
  spec.seed = 42;
  const auto one = run_fhs(p, state, pool, spec, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    const auto many = run_fhs(p, state, pool, spec, threads);
    CHECK(many.cum_returns == one.cum_returns);
  }
  spec.seed = 43;
  CHECK(run_fhs(p, state, pool, spec, 1).cum_returns != one.cum_returns);
}

TEST_CASE("parametric VaR") {
  const Piv t5(5.0, 0.0);
  SECTION("median of a symmetric law") {
    CHECK_THAT(parametric_var(t5, 0.0, 1.0, 0.5), WithinAbs(0.0, 1e-12));
  }
  SECTION("Student-t quantile oracle") {
    const boost::math::students_t dist(5.0);
    const double q = boost::math::quantile(dist, 0.05) * std::sqrt(3.0 / 5.0);
    CHECK_THAT(parametric_var(t5, 0.0, 0.02, 0.05), WithinRel(-0.02 * q, 1e-9));
    CHECK_THAT(parametric_var(t5, 0.0, 0.02, 0.05), WithinAbs(0.0312169, 1e-6));
  }
  SECTION("one-step forecast from a fit") {
    const garch::GjrParams p{0.001, 0.1, 1e-5, 0.1, 0.1, 0.8, 4.0, -0.3};
    const auto fit = manual_fit(p, {0.1, -0.2, 0.3}, 4e-4, -0.015, 0.012);
    const auto f = one_step_forecast(fit);
    CHECK(f.mean == p.mu + p.phi * 0.012);
    CHECK_THAT(f.sigma * f.sigma,
               WithinRel(p.omega + (p.alpha + p.gamma) * 0.015 * 0.015 + p.beta * 4e-4, 1e-14));
    const Piv law(p.m, p.nu);
    CHECK_THAT(parametric_var(fit, 0.01),
               WithinRel(-(f.mean + law.inv_cdf(0.01) * f.sigma), 1e-14));
  }
  CHECK(code_of([&] { parametric_var(t5, 0.0, 1.0, 1.0); }) ==
        ErrorCode::ProbabilityOutOfDomain);
}

TEST_CASE("parametric VaR matches FHS on an exact quantile pool") {
  const garch::GjrParams p{0.0003, 0.0, 4e-4, 0.0, 0.0, 0.0, 4.0, 0.5};
  const Piv law(p.m, p.nu);
  auto grid = quantile_grid(law, 1'000'000, 1'000);
  for (std::size_t i : {1234u, 456789u, 999999u})
    CHECK_THAT(law.cdf(grid[i]), WithinAbs((i + 0.5) / 1e6, 1e-9));

  const auto fit = manual_fit(p, std::move(grid), 4e-4, 0.0, 0.0);
  RiskSpec spec;
  spec.horizon = 1;
  spec.trials = 1'000'000;
  spec.levels = {0.05};
  spec.seed = 2017;
  // At 10^6 trials the 5% quantile has a relative standard error near 0.2%.
  const auto sample = run_fhs(fit, spec, 1);
  CHECK_THAT(var_from_sample(sample, 0.05), WithinRel(parametric_var(fit, 0.05), 0.005));
}

TEST_CASE("report assembly") {
  std::vector<double> x(1000);
  std::mt19937_64 gen(4);
  std::student_t_distribution<double> t4(4.0);
  for (double& v : x) v = 0.05 * t4(gen);
  SimulatedSample sample{x, 10, 9};
  RiskSpec spec;
  spec.trials = 1000;
  spec.levels = {0.01, 0.10, 0.025, 0.05, 0.01};
  const auto report = make_report("A", sample, spec);
  REQUIRE(report.entries.size() == 4);
  for (std::size_t i = 0; i + 1 < report.entries.size(); ++i) {
    CHECK(report.entries[i].level > report.entries[i + 1].level);
    CHECK(report.entries[i].var <= report.entries[i + 1].var);
  }
  for (const auto& e : report.entries) {
    CHECK(e.var == var_from_sample(sample, e.level));
    CHECK(e.es == es_from_sample(sample, e.level));
    CHECK(e.es >= e.var);
  }
  REQUIRE(report.basel_gap.has_value());
  CHECK(*report.basel_gap == basel_consistency(report));

  spec.levels = {0.05};
  const auto partial = make_report("A", sample, spec);
  CHECK_FALSE(partial.basel_gap.has_value());
  CHECK(code_of([&] { basel_consistency(partial); }) == ErrorCode::MissingLevel);
}

TEST_CASE("Basel gap arithmetic on 10-day figures") {
  CHECK_THAT(basel_consistency(19.239, 20.460), WithinAbs(0.0597, 1e-4));
  CHECK_THAT(basel_consistency(52.057, 60.227), WithinAbs(0.1357, 1e-4));
  CHECK(basel_consistency(3.0, 3.0) == 0.0);
}
