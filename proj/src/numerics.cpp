#include "fhsrisk/numerics.hpp"

#include "fhsrisk/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>
#include <string>

namespace fhsrisk::numerics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// B_{2k} / (2k (2k - 1)), k = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,   -1.0 / 360.0,      1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0};

constexpr double kStirlingThreshold = 15.0;

} // namespace

double ln_gamma_real(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw Error(ErrorCode::DomainError, "ln_gamma_real requires x > 0, got " + std::to_string(x));
  return std::lgamma(x);
}

Complex ln_gamma_complex(Complex z) {
  if (!(z.real() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorCode::DomainError, "ln_gamma_complex requires Re z > 0");
  if (z.imag() == 0.0) return {ln_gamma_real(z.real()), 0.0};

  // Gamma(z) = Gamma(z + n) / (z (z+1) ... (z+n-1)); each factor has positive
  // real part, so summing principal logs gives the continuous branch.
  Complex shift{0.0, 0.0};
  Complex w = z;
  while (std::abs(w) < kStirlingThreshold) {
    shift += std::log(w);
    w += 1.0;
  }

  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex series{0.0, 0.0};
  Complex power = inv;
  for (double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  const double half_ln_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (w - 0.5) * std::log(w) - w + half_ln_two_pi + series - shift;
}

double regularized_gamma_upper(double s, double x) {
  if (!(s > 0.0) || !(x >= 0.0) || std::isnan(x))
    throw Error(ErrorCode::DomainError, "regularized_gamma_upper requires s > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;

  const double log_prefactor = -x + s * std::log(x) - std::lgamma(s);
  constexpr double eps = 1e-16;
  constexpr int max_iter = 10000;

  if (x < s + 1.0) {
    // Series for P(s, x).
    double ap = s;
    double term = 1.0 / s;
    double sum = term;
    for (int n = 0; n < max_iter; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * eps) break;
    }
    const double p = sum * std::exp(log_prefactor);
    return std::clamp(1.0 - p, 0.0, 1.0);
  }

  // Modified Lentz continued fraction for Q(s, x).
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < max_iter; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < eps) break;
  }
  return std::clamp(std::exp(log_prefactor) * h, 0.0, 1.0);
}

double chi_square_sf(double x, double dof) {
  if (!(dof > 0.0)) throw Error(ErrorCode::DomainError, "chi-square dof must be positive");
  if (x <= 0.0) return 1.0;
  return regularized_gamma_upper(0.5 * dof, 0.5 * x);
}

double normal_two_sided_p(double z) {
  return std::erfc(std::fabs(z) / std::numbers::sqrt2);
}

namespace {

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod_15(const RealFunction& f, double a, double b) {
  static constexpr std::array<double, 8> xgk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wgk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = wgk[7] * fc;
  double gauss = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += wgk[j] * pair;
    if (j % 2 == 1) gauss += wg[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::fabs(kronrod - gauss)};
}

} // namespace

double integrate_adaptive(const RealFunction& f, double a, double b, double tol,
                          int max_depth) {
  if (!(a < b)) throw Error(ErrorCode::DomainError, "integrate_adaptive requires a < b");
  if (!(tol > 0.0)) throw Error(ErrorCode::DomainError, "integrate_adaptive requires tol > 0");

  // Global bisection of the worst segment; a bisection depth of `max_depth`
  // bounds the total number of segments.
  const std::size_t max_segments = static_cast<std::size_t>(std::max(1, max_depth)) * 100;
  std::priority_queue<Segment> queue;
  Segment first = gauss_kronrod_15(f, a, b);
  double total = first.value;
  double total_error = first.error;
  queue.push(first);
  const double min_width = (b - a) * std::ldexp(1.0, -max_depth);

  while (true) {
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::fabs(total);
    if (total_error <= std::max(tol, floor)) break;
    if (!std::isfinite(total))
      throw Error(ErrorCode::MaxDepthExceeded, "integrand produced a non-finite value");
    if (queue.size() >= max_segments)
      throw Error(ErrorCode::MaxDepthExceeded, "segment budget exhausted");
    Segment worst = queue.top();
    if (worst.b - worst.a <= min_width)
      throw Error(ErrorCode::MaxDepthExceeded, "bisection depth limit reached");
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = gauss_kronrod_15(f, worst.a, mid);
    Segment right = gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  // Re-sum in a fixed order so the result does not carry the running-update drift.
  std::vector<Segment> segments;
  segments.reserve(queue.size());
  while (!queue.empty()) {
    segments.push_back(queue.top());
    queue.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& l, const Segment& r) { return l.a < r.a; });
  double sum = 0.0;
  for (const auto& s : segments) sum += s.value;
  return sum;
}

double find_root_bracketed(const RealFunction& f, double lo, double hi, double tol,
                           int max_iterations) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (std::isnan(fa) || std::isnan(fb) || fa * fb > 0.0)
    throw Error(ErrorCode::NoSignChange, "f(lo) and f(hi) have the same sign");
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < max_iterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;

    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      // Inverse quadratic interpolation, falling back to secant.
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
    if (std::isnan(fb)) throw Error(ErrorCode::DomainError, "root function returned NaN");
  }
  return b;
}

void OptimizerOptions::validate() const {
  if (max_iterations < 1) throw Error(ErrorCode::DomainError, "max_iterations must be >= 1");
  if (!(tolerance_f > 0.0) || !(tolerance_x > 0.0))
    throw Error(ErrorCode::DomainError, "optimizer tolerances must be positive");
  if (!(initial_simplex_scale > 0.0))
    throw Error(ErrorCode::DomainError, "initial_simplex_scale must be positive");
}

SimplexResult minimize_simplex(const Objective& objective, std::span<const double> x0,
                               const OptimizerOptions& opts) {
  opts.validate();
  const std::size_t n = x0.size();
  if (n == 0) throw Error(ErrorCode::DomainError, "empty starting point");

  SimplexResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = objective(x);
    return std::isnan(v) ? kInf : v;
  };

  const double f0 = objective(x0);
  ++result.evaluations;
  if (!std::isfinite(f0))
    throw Error(ErrorCode::NonFiniteObjective, "objective is not finite at the starting point");

  const double dim = static_cast<double>(n);
  const bool adaptive = n >= 2;
  const double c_reflect = 1.0;
  const double c_expand = adaptive ? 1.0 + 2.0 / dim : 2.0;
  const double c_contract = adaptive ? 0.75 - 0.5 / dim : 0.5;
  const double c_shrink = adaptive ? 1.0 - 1.0 / dim : 0.5;

  std::vector<std::vector<double>> pts(n + 1, std::vector<double>(x0.begin(), x0.end()));
  std::vector<double> vals(n + 1);
  vals[0] = f0;
  for (std::size_t i = 0; i < n; ++i) {
    pts[i + 1][i] += opts.initial_simplex_scale;
    vals[i + 1] = eval(pts[i + 1]);
  }

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  auto point_at = [&](double coef, const std::vector<double>& from, std::vector<double>& out) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + coef * (from[j] - centroid[j]);
  };

  for (result.iterations = 0; result.iterations < opts.max_iterations; ++result.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    {
      std::vector<std::vector<double>> sorted_pts(n + 1);
      std::vector<double> sorted_vals(n + 1);
      for (std::size_t k = 0; k <= n; ++k) {
        sorted_pts[k] = std::move(pts[order[k]]);
        sorted_vals[k] = vals[order[k]];
      }
      pts.swap(sorted_pts);
      vals.swap(sorted_vals);
    }

    const double spread = vals[n] - vals[0];
    double diameter = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        diameter = std::max(diameter, std::fabs(pts[k][j] - pts[0][j]));
    if ((std::isfinite(spread) && spread <= opts.tolerance_f) || diameter <= opts.tolerance_x) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[k][j];
    for (auto& c : centroid) c /= dim;

    point_at(-c_reflect, pts[n], xr);
    const double fr = eval(xr);

    if (fr < vals[0]) {
      point_at(c_expand, xr, xe);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[n] = xe;
        vals[n] = fe;
      } else {
        pts[n] = xr;
        vals[n] = fr;
      }
      continue;
    }
    if (fr < vals[n - 1]) {
      pts[n] = xr;
      vals[n] = fr;
      continue;
    }

    bool accepted = false;
    if (fr < vals[n]) {
      point_at(c_contract, xr, xc);
      const double fc = eval(xc);
      if (fc <= fr) {
        pts[n] = xc;
        vals[n] = fc;
        accepted = true;
      }
    } else {
      point_at(c_contract, pts[n], xc);
      const double fc = eval(xc);
      if (fc < vals[n]) {
        pts[n] = xc;
        vals[n] = fc;
        accepted = true;
      }
    }
    if (!accepted) {
      for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t j = 0; j < n; ++j)
          pts[k][j] = pts[0][j] + c_shrink * (pts[k][j] - pts[0][j]);
        vals[k] = eval(pts[k]);
      }
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(vals.begin(), vals.end()) - vals.begin());
  result.argmin = pts[best];
  result.value = vals[best];
  return result;
}

} // namespace fhsrisk::numerics
