#pragma once

namespace fhsrisk {

/// Standardized Pearson type-IV innovation law with shape `m` and asymmetry `nu`.
///
/// The density is that of z where sigma_hat * z + mu_hat follows a unit-scale
/// Pearson IV with exponent (m + 1) / 2 and skew parameter nu. The location
/// mu_hat = -nu / (m - 1) and scale
/// sigma_hat = sqrt((1 + nu^2 / (m - 1)^2) / (m - 2)) make z zero-mean with
/// unit variance whenever m > 2.
///
/// Immutable after construction; the normalization constant is cached so no
/// gamma function is evaluated per point.
class Piv {
public:
  /// Throws ShapeOutOfDomain unless m > 2 and both arguments are finite.
  Piv(double m, double nu);

  double m() const noexcept { return m_; }
  double nu() const noexcept { return nu_; }
  double mu_hat() const noexcept { return mu_hat_; }
  double sigma_hat() const noexcept { return sigma_hat_; }
  double ln_norm() const noexcept { return ln_norm_; }

  double pdf(double z) const;
  double log_pdf(double z) const;

  /// Absolute error below 1e-9.
  double cdf(double z) const;

  /// Quantile with |cdf(z) - p| <= 1e-8. Throws ProbabilityOutOfDomain
  /// unless 0 < p < 1.
  double inv_cdf(double p) const;

  struct Moments {
    double mean;
    double variance;
  };
  Moments standardized_moments() const;

  /// E[z^k] by quadrature, k in 0..3. The k-th moment exists only for m > k.
  double raw_moment(int k) const;

private:
  /// Integral of cos^(m-1)(t) exp(-nu t) over [lo, hi] within (-pi/2, pi/2);
  /// this is the density of t = atan(sigma_hat z + mu_hat) up to a constant.
  double angle_mass(double lo, double hi) const;

  double m_;
  double nu_;
  double mu_hat_;
  double sigma_hat_;
  double ln_norm_;
  double half_exponent_;   // (m + 1) / 2
  double ln_angle_norm_;   // ln_norm - ln sigma_hat
  double mode_angle_;      // argmax of the angle density, atan(-nu / (m - 1))
};

} // namespace fhsrisk
