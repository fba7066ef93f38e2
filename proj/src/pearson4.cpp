#include "fhsrisk/pearson4.hpp"

#include "fhsrisk/error.hpp"
#include "fhsrisk/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fhsrisk {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kCdfTolerance = 1e-12;
constexpr double kMomentTolerance = 1e-11;

} // namespace

Piv::Piv(double m, double nu) : m_(m), nu_(nu) {
  if (!std::isfinite(m) || !std::isfinite(nu) || !(m > 2.0))
    throw Error(ErrorCode::ShapeOutOfDomain,
                "Pearson IV needs m > 2 and finite nu, got m=" + std::to_string(m) +
                    " nu=" + std::to_string(nu));
  mu_hat_ = -nu / (m - 1.0);
  sigma_hat_ = std::sqrt((1.0 / (m - 2.0)) * (1.0 + nu * nu / ((m - 1.0) * (m - 1.0))));
  half_exponent_ = 0.5 * (m + 1.0);

  using numerics::ln_gamma_complex;
  using numerics::ln_gamma_real;
  const double lg_half_exp = ln_gamma_real(half_exponent_);
  // |Gamma(a + ib)|^2 = exp(2 Re lnGamma(a + ib))
  const double ln_modulus_sq =
      2.0 * ln_gamma_complex({half_exponent_, 0.5 * nu}).real();
  ln_norm_ = std::log(sigma_hat_) + lg_half_exp - 0.5 * std::log(std::numbers::pi) -
             ln_gamma_real(0.5 * m) + ln_modulus_sq - 2.0 * lg_half_exp;
  ln_angle_norm_ = ln_norm_ - std::log(sigma_hat_);
  mode_angle_ = std::atan(mu_hat_);
}

double Piv::log_pdf(double z) const {
  const double x = sigma_hat_ * z + mu_hat_;
  return ln_norm_ - nu_ * std::atan(x) - half_exponent_ * std::log1p(x * x);
}

double Piv::pdf(double z) const { return std::exp(log_pdf(z)); }

double Piv::angle_mass(double lo, double hi) const {
  if (!(lo < hi)) return 0.0;
  const double power = m_ - 1.0;
  const double nu = nu_;
  auto density = [power, nu](double t) {
    const double c = std::cos(t);
    if (c <= 0.0) return 0.0;
    return std::exp(power * std::log(c) - nu * t);
  };
  const double tol = kCdfTolerance * std::exp(-ln_angle_norm_);
  return numerics::integrate_adaptive(density, lo, hi, tol);
}

double Piv::cdf(double z) const {
  if (std::isnan(z)) return z;
  if (z == -std::numeric_limits<double>::infinity()) return 0.0;
  if (z == std::numeric_limits<double>::infinity()) return 1.0;
  const double angle = std::atan(sigma_hat_ * z + mu_hat_);
  const double scale = std::exp(ln_angle_norm_);
  double p;
  if (angle <= mode_angle_)
    p = scale * angle_mass(-kHalfPi, angle);
  else
    p = 1.0 - scale * angle_mass(angle, kHalfPi);
  return std::clamp(p, 0.0, 1.0);
}

double Piv::inv_cdf(double p) const {
  if (!(p > 0.0 && p < 1.0))
    throw Error(ErrorCode::ProbabilityOutOfDomain,
                "quantile level must lie in (0, 1), got " + std::to_string(p));
  auto gap = [this, p](double z) { return cdf(z) - p; };
  double lo = -10.0, hi = 10.0;
  while (gap(lo) > 0.0) {
    hi = lo;
    lo *= 2.0;
    if (!std::isfinite(lo)) throw Error(ErrorCode::NoSignChange, "quantile bracket overflow");
  }
  while (gap(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw Error(ErrorCode::NoSignChange, "quantile bracket overflow");
  }
  return numerics::find_root_bracketed(gap, lo, hi, 1e-13);
}

double Piv::raw_moment(int k) const {
  if (k < 0 || k > 3) throw Error(ErrorCode::DomainError, "raw_moment supports k in 0..3");
  if (!(m_ > k))
    throw Error(ErrorCode::DomainError,
                "moment " + std::to_string(k) + " does not exist for m=" + std::to_string(m_));

  // Split at t = 0, write each half in u = distance to the nearer pole, then
  // u = s^power so the integrand vanishes smoothly at s = 0 even when the
  // moment integrand has an integrable singularity at the pole.
  const double sin_exponent = m_ - 1.0 - k;
  const double power = std::max(1.0, 2.0 / (m_ - k));
  const double s_max = std::pow(kHalfPi, 1.0 / power);
  const double scale = std::exp(ln_angle_norm_);

  auto half = [&](double side) {
    auto integrand = [&, side](double s) {
      if (s <= 0.0) return 0.0;
      const double ln_s = std::log(s);
      const double u = std::exp(power * ln_s);
      const double ln_sin_u = u < 1e-8 ? power * ln_s : std::log(std::sin(u));
      const double t = side * (kHalfPi - u);
      const double centered = (side * std::cos(u) - mu_hat_ * std::sin(u)) / sigma_hat_;
      double poly = 1.0;
      for (int i = 0; i < k; ++i) poly *= centered;
      const double ln_rest =
          sin_exponent * ln_sin_u + std::log(power) + (power - 1.0) * ln_s - nu_ * t;
      return poly * std::exp(ln_rest);
    };
    return numerics::integrate_adaptive(integrand, 0.0, s_max, kMomentTolerance / scale);
  };
  return scale * (half(1.0) + half(-1.0));
}

Piv::Moments Piv::standardized_moments() const {
  const double mean = raw_moment(1);
  const double second = raw_moment(2);
  return {mean, second - mean * mean};
}

} // namespace fhsrisk
