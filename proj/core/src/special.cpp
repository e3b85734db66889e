#include "sefield/special.hpp"

#include <cmath>
#include <limits>

namespace sefield {

namespace {

constexpr double kInvSqrt2 = 0.707106781186547524400844362104849039;

// Asymptotic log(1 - Phi(x)) for large x.
double log_sf_asymptotic(double x) {
  const double z2 = 1.0 / (x * x);
  const double series = 1.0 - z2 * (1.0 - 3.0 * z2 * (1.0 - 5.0 * z2 * (1.0 - 7.0 * z2)));
  return -0.5 * x * x - std::log(x) - kLogSqrt2Pi + std::log(series);
}

double ppnd16_central(double q) {
  const double r = 0.180625 - q * q;
  return q *
         (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
               6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
             1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
           1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
         (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
               3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
             5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
           4.2313330701600911252e+1) * r + 1.0);
}

// Tail branch of AS241 given r = sqrt(-log(tail probability)); returns the
// magnitude of the quantile.
double ppnd16_tail(double r) {
  if (r <= 5.0) {
    r -= 1.6;
    return (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                 2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
               3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
             4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
           (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
               6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
             2.05319162663775882187e+0) * r + 1.0);
  }
  r -= 5.0;
  return (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
               1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
             2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
           5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
         (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
               1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
             1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
           5.99832206555887937690e-1) * r + 1.0);
}

}  // namespace

double normal_pdf(double x) noexcept { return std::exp(-0.5 * x * x - kLogSqrt2Pi); }

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_sf(double x) noexcept { return 0.5 * std::erfc(x * kInvSqrt2); }

double normal_log_sf(double x) noexcept {
  if (x > 37.0) return log_sf_asymptotic(x);
  if (x < -5.0) return std::log1p(-normal_cdf(x));
  return std::log(normal_sf(x));
}

double normal_log_cdf(double x) noexcept { return normal_log_sf(-x); }

double normal_quantile(double p) noexcept {
  if (!(p > 0.0)) return -std::numeric_limits<double>::infinity();
  if (!(p < 1.0)) return std::numeric_limits<double>::infinity();
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) return ppnd16_central(q);
  const double tail = q < 0.0 ? p : 1.0 - p;
  const double z = ppnd16_tail(std::sqrt(-std::log(tail)));
  return q < 0.0 ? -z : z;
}

double normal_upper_quantile_log(double log_q) noexcept {
  if (log_q > -700.0) {
    const double q = std::exp(log_q);
    if (q > 0.075) return -normal_quantile(q);
    return ppnd16_tail(std::sqrt(-log_q));
  }
  // Beyond double range of q: Newton on the asymptotic log tail.
  double z = std::sqrt(-2.0 * log_q);
  for (int it = 0; it < 50; ++it) {
    const double f = log_sf_asymptotic(z) - log_q;
    // d/dz log(1 - Phi(z)) = -pdf/sf, approximately -(z + 1/z) here.
    const double slope = -(z + 1.0 / z);
    const double step = f / slope;
    z -= step;
    if (std::fabs(step) <= 1e-15 * z) break;
  }
  return z;
}

double normal_quantile_log(double log_p) noexcept {
  if (log_p >= 0.0) return std::numeric_limits<double>::infinity();
  if (log_p > -0.693) {
    // Upper half: work with the complement.
    const double q = -std::expm1(log_p);
    return normal_upper_quantile_log(std::log(q));
  }
  return -normal_upper_quantile_log(log_p);
}

double log_add_exp(double a, double b) noexcept {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace sefield
