#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fhsrisk::numerics {

using Complex = std::complex<double>;

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double ln_gamma_real(double x);

/// Analytic log-gamma on Re z > 0 (imaginary part continuous, not reduced
/// mod 2 pi). Shift-up recurrence followed by a Stirling series.
Complex ln_gamma_complex(Complex z);

/// Q(s, x) = Gamma(s, x) / Gamma(s).
double regularized_gamma_upper(double s, double x);

/// Survival function of the chi-square distribution with `dof` degrees of freedom.
double chi_square_sf(double x, double dof);

/// Two-sided p-value of a standard normal statistic.
double normal_two_sided_p(double z);

using RealFunction = std::function<double(double)>;

inline constexpr double kDefaultQuadratureTolerance = 1e-10;

/// Adaptive Gauss-Kronrod (7/15) quadrature on [a, b] to absolute tolerance.
/// Throws MaxDepthExceeded if a subinterval cannot meet its share of `tol`.
double integrate_adaptive(const RealFunction& f, double a, double b,
                          double tol = kDefaultQuadratureTolerance, int max_depth = 60);

/// Brent's method. Requires f(lo) * f(hi) <= 0, throws NoSignChange otherwise.
double find_root_bracketed(const RealFunction& f, double lo, double hi, double tol = 1e-12,
                           int max_iterations = 500);

struct OptimizerOptions {
  int max_iterations = 20000;
  double tolerance_f = 1e-10;
  double tolerance_x = 1e-8;
  double initial_simplex_scale = 0.1;

  void validate() const;
};

struct SimplexResult {
  std::vector<double> argmin;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead with dimension-adaptive coefficients. NaN and +inf values are
/// both ranked as worse than any finite value, which lets callers encode
/// parameter constraints as an infinite penalty.
SimplexResult minimize_simplex(const Objective& objective, std::span<const double> x0,
                               const OptimizerOptions& opts = {});

} // namespace fhsrisk::numerics
