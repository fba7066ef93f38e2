#include "fhsrisk/diagnostics.hpp"

#include "fhsrisk/error.hpp"
#include "fhsrisk/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace fhsrisk::diagnostics {

namespace {

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

void require_length(std::span<const double> x, std::size_t min_len, const char* what) {
  if (x.size() < min_len)
    throw Error(ErrorCode::TooShort, std::string(what) + " needs at least " +
                                         std::to_string(min_len) + " observations, got " +
                                         std::to_string(x.size()));
}

} // namespace

Moments moments(std::span<const double> x) {
  require_length(x, 4, "moments");
  const double n = static_cast<double>(x.size());
  const double mu = mean_of(x);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - mu;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  if (!(m2 > 0.0)) throw Error(ErrorCode::ZeroVariance, "series has zero variance");
  const double sum_sq = m2;
  m2 /= n;
  m3 /= n;
  m4 /= n;
  return {mu, std::sqrt(sum_sq / (n - 1.0)), m3 / std::pow(m2, 1.5), m4 / (m2 * m2)};
}

TestResult jarque_bera(std::size_t n, double skewness, double kurtosis) {
  const double excess = kurtosis - 3.0;
  const double stat =
      static_cast<double>(n) / 6.0 * (skewness * skewness + 0.25 * excess * excess);
  return {stat, numerics::chi_square_sf(stat, 2.0)};
}

TestResult jarque_bera(std::span<const double> x) {
  require_length(x, 8, "jarque_bera");
  const auto mom = moments(x);
  return jarque_bera(x.size(), mom.skewness, mom.kurtosis);
}

TestResult ljung_box(std::span<const double> x, int lags) {
  if (lags < 1) throw Error(ErrorCode::DomainError, "ljung_box needs lags >= 1");
  require_length(x, static_cast<std::size_t>(lags) + 2, "ljung_box");
  const std::size_t n = x.size();
  const double mu = mean_of(x);
  double denom = 0.0;
  for (double v : x) denom += (v - mu) * (v - mu);
  if (!(denom > 0.0)) throw Error(ErrorCode::ZeroVariance, "autocorrelation undefined");

  const double nd = static_cast<double>(n);
  double q = 0.0;
  for (int k = 1; k <= lags; ++k) {
    double num = 0.0;
    for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t)
      num += (x[t] - mu) * (x[t - k] - mu);
    const double rho = num / denom;
    q += rho * rho / (nd - k);
  }
  q *= nd * (nd + 2.0);
  return {q, numerics::chi_square_sf(q, lags)};
}

ArchLmResult arch_lm(std::span<const double> x, int lags) {
  if (lags < 1) throw Error(ErrorCode::DomainError, "arch_lm needs lags >= 1");
  require_length(x, 2 * static_cast<std::size_t>(lags) + 1, "arch_lm");
  const auto q = static_cast<std::size_t>(lags);
  const double mu = mean_of(x);
  std::vector<double> e2(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) e2[t] = (x[t] - mu) * (x[t] - mu);

  const std::size_t rows = x.size() - q;
  Eigen::MatrixXd design(rows, q + 1);
  Eigen::VectorXd target(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t t = r + q;
    target(r) = e2[t];
    design(r, 0) = 1.0;
    for (std::size_t j = 1; j <= q; ++j) design(r, j) = e2[t - j];
  }

  const double target_mean = target.mean();
  const double tss = (target.array() - target_mean).square().sum();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (!(tss > 0.0) || qr.rank() < static_cast<Eigen::Index>(q + 1))
    throw Error(ErrorCode::SingularRegression, "ARCH-LM design matrix is rank deficient");

  const Eigen::VectorXd coef = qr.solve(target);
  const double rss = (target - design * coef).squaredNorm();
  const double r2 = std::clamp(1.0 - rss / tss, 0.0, 1.0);
  const double n_eff = static_cast<double>(rows);
  const double lm = n_eff * r2;
  const double df_resid = n_eff - static_cast<double>(q) - 1.0;
  const double f = r2 < 1.0 ? (r2 / static_cast<double>(q)) / ((1.0 - r2) / df_resid)
                            : std::numeric_limits<double>::infinity();
  return {lm, numerics::chi_square_sf(lm, lags), f};
}

DiagnosticsRow describe(std::span<const double> x, int lags, SquaresBasis squares) {
  DiagnosticsRow row;
  row.n = x.size();
  row.lags = lags;
  const auto mom = moments(x);
  row.mean = mom.mean;
  row.std = mom.std;
  row.skewness = mom.skewness;
  row.kurtosis = mom.kurtosis;
  const double n = static_cast<double>(x.size());
  row.skew_p = numerics::normal_two_sided_p(mom.skewness / std::sqrt(6.0 / n));
  row.kurt_p = numerics::normal_two_sided_p((mom.kurtosis - 3.0) / std::sqrt(24.0 / n));

  require_length(x, 8, "describe");
  const auto jb = jarque_bera(x.size(), mom.skewness, mom.kurtosis);
  row.jb_stat = jb.stat;
  row.jb_p = jb.p;

  const auto arch = arch_lm(x, lags);
  row.arch_stat = arch.lm_stat;
  row.arch_p = arch.lm_p;
  row.arch_f_stat = arch.f_stat;

  const auto lb = ljung_box(x, lags);
  row.lb_stat = lb.stat;
  row.lb_p = lb.p;

  const double centre = squares == SquaresBasis::Demeaned ? mom.mean : 0.0;
  std::vector<double> sq(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) sq[t] = (x[t] - centre) * (x[t] - centre);
  const auto lb2 = ljung_box(sq, lags);
  row.lb2_stat = lb2.stat;
  row.lb2_p = lb2.p;
  return row;
}

CorrelationMatrix correlation_matrix(const std::vector<ReturnSeries>& panel) {
  CorrelationMatrix out;
  const std::size_t k = panel.size();
  if (k == 0) return out;
  const std::size_t n = panel.front().size();
  if (n < 3) throw Error(ErrorCode::TooShort, "correlation needs at least 3 observations");

  std::vector<std::vector<double>> centred(k);
  std::vector<double> norms(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (panel[i].size() != n)
      throw Error(ErrorCode::LengthMismatch, panel[i].asset_id + " length differs from " +
                                                 panel.front().asset_id);
    out.asset_ids.push_back(panel[i].asset_id);
    const double mu = mean_of(panel[i].returns);
    centred[i].resize(n);
    double ss = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      centred[i][t] = panel[i].returns[t] - mu;
      ss += centred[i][t] * centred[i][t];
    }
    if (!(ss > 0.0)) throw Error(ErrorCode::ZeroVariance, panel[i].asset_id + " is constant");
    norms[i] = std::sqrt(ss);
  }

  out.values.assign(k, std::vector<double>(k, 1.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      double cross = 0.0;
      for (std::size_t t = 0; t < n; ++t) cross += centred[i][t] * centred[j][t];
      const double r = std::clamp(cross / (norms[i] * norms[j]), -1.0, 1.0);
      out.values[i][j] = r;
      out.values[j][i] = r;
    }
  }
  return out;
}

CorrelationPair strongest_pair(const CorrelationMatrix& corr) {
  const std::size_t k = corr.values.size();
  if (k < 2) throw Error(ErrorCode::TooShort, "need at least two assets for a pair");
  CorrelationPair best{0, 1, corr.values[0][1]};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (corr.values[i][j] > best.value) best = {i, j, corr.values[i][j]};
  return best;
}

} // namespace fhsrisk::diagnostics
