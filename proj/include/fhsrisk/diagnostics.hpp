#pragma once

#include <span>
#include <string>
#include <vector>

#include "fhsrisk/market_data.hpp"

namespace fhsrisk::diagnostics {

struct Moments {
  double mean;
  double std;       // N - 1 divisor
  double skewness;  // m3 / m2^1.5, population central moments
  double kurtosis;  // m4 / m2^2, raw (normal = 3)
};

struct TestResult {
  double stat;
  double p;
};

struct ArchLmResult {
  double lm_stat;  // N_eff * R^2, chi-square with q dof
  double lm_p;
  double f_stat;   // (R^2 / q) / ((1 - R^2) / (N_eff - q - 1))
};

/// One asset's descriptive row: moments plus JB, ARCH-LM and Ljung-Box on
/// levels and squares. Skew and kurtosis p-values use the asymptotic normal
/// standard errors sqrt(6/N) and sqrt(24/N).
struct DiagnosticsRow {
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;
  double skew_p = 1.0;
  double kurt_p = 1.0;
  double jb_stat = 0.0;
  double jb_p = 1.0;
  double arch_stat = 0.0;
  double arch_p = 1.0;
  double arch_f_stat = 0.0;
  double lb_stat = 0.0;
  double lb_p = 1.0;
  double lb2_stat = 0.0;
  double lb2_p = 1.0;
  int lags = 12;
};

struct CorrelationMatrix {
  std::vector<std::string> asset_ids;
  std::vector<std::vector<double>> values;
};

Moments moments(std::span<const double> x);
TestResult jarque_bera(std::span<const double> x);
/// JB from precomputed sample size, skewness and raw kurtosis.
TestResult jarque_bera(std::size_t n, double skewness, double kurtosis);
/// Ljung-Box Q on x as given; squaring is the caller's job.
TestResult ljung_box(std::span<const double> x, int lags);
ArchLmResult arch_lm(std::span<const double> x, int lags);

enum class SquaresBasis {
  Demeaned,  // squares of x - mean(x): descriptive table on raw returns
  Raw,       // squares of x itself: post-fit check on standardized residuals
};

DiagnosticsRow describe(std::span<const double> x, int lags,
                        SquaresBasis squares = SquaresBasis::Demeaned);

CorrelationMatrix correlation_matrix(const std::vector<ReturnSeries>& panel);

struct CorrelationPair {
  std::size_t i;
  std::size_t j;  // i < j
  double value;
};

/// Off-diagonal entry with the largest correlation. Needs at least two assets.
CorrelationPair strongest_pair(const CorrelationMatrix& corr);

} // namespace fhsrisk::diagnostics
