#pragma once

#include <cstdint>

#include "sefield/rng.hpp"

namespace sefield {

// Normalizing sequences of a field on n vertices with correlation r.
struct NormConstants {
  std::int64_t n = 0;
  double c = 0.0;  // sqrt(2 log n)
  double d = 0.0;  // c - (log log n + log 4 pi) / (2c)
  double t = 0.0;  // truncation level c + log log n / sqrt(log n)
  double T = 0.0;  // log log n
  double f = 0.0;  // 1 - 2r
};

// Gumbel law with CDF exp(-mass * exp(-x)).
struct GumbelLaw {
  double mass = 1.0;

  static GumbelLaw standard() noexcept { return GumbelLaw{1.0}; }
  // The law with mass 1/(4 sqrt(2 pi)) that arises for sample-coefficient maxima.
  static GumbelLaw g1() noexcept;
};

double scale_c(std::int64_t n);
NormConstants norm_constants(std::int64_t n, double r);

// u_n(y) = sqrt(2) c + (y - log(4 sqrt(pi) c)) / (sqrt(2) c)
double threshold_u(std::int64_t n, double y);

double gumbel_cdf(double x, GumbelLaw law) noexcept;
// The (1 - alpha)-quantile.
double gumbel_quantile(double alpha, GumbelLaw law);
double gumbel_inverse_cdf(double u, GumbelLaw law) noexcept;
double sample_gumbel(GumbelLaw law, RngStream& stream) noexcept;

}  // namespace sefield
