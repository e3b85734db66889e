#include "sefield/normalizers.hpp"

#include <cmath>
#include <string>

#include "sefield/errors.hpp"
#include "sefield/special.hpp"

namespace sefield {

GumbelLaw GumbelLaw::g1() noexcept { return GumbelLaw{1.0 / (4.0 * std::sqrt(2.0 * kPi))}; }

double scale_c(std::int64_t n) {
  if (n < 2) throw DomainError("scale_c: n must be >= 2, got " + std::to_string(n));
  return std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

NormConstants norm_constants(std::int64_t n, double r) {
  if (n < 3) throw DomainError("norm_constants: n must be >= 3, got " + std::to_string(n));
  if (!(r >= 0.0 && r <= 0.5)) throw DomainError("norm_constants: r must lie in [0, 1/2]");
  const double logn = std::log(static_cast<double>(n));
  NormConstants k;
  k.n = n;
  k.c = std::sqrt(2.0 * logn);
  k.T = std::log(logn);
  k.d = k.c - (k.T + std::log(4.0 * kPi)) / (2.0 * k.c);
  k.t = k.c + k.T / std::sqrt(logn);
  k.f = 1.0 - 2.0 * r;
  return k;
}

double threshold_u(std::int64_t n, double y) {
  if (n < 3) throw DomainError("threshold_u: n must be >= 3, got " + std::to_string(n));
  const double c = scale_c(n);
  const double s = kSqrt2 * c;
  return s + (y - std::log(4.0 * std::sqrt(kPi) * c)) / s;
}

double gumbel_cdf(double x, GumbelLaw law) noexcept { return std::exp(-law.mass * std::exp(-x)); }

double gumbel_quantile(double alpha, GumbelLaw law) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("gumbel_quantile: alpha must lie in (0,1)");
  return -std::log(-std::log1p(-alpha) / law.mass);
}

double gumbel_inverse_cdf(double u, GumbelLaw law) noexcept {
  return -std::log(-std::log(u) / law.mass);
}

double sample_gumbel(GumbelLaw law, RngStream& stream) noexcept {
  return gumbel_inverse_cdf(stream.uniform(), law);
}

}  // namespace sefield
