#pragma once

#include <cstddef>
#include <cstdint>

#include "sefield/rng.hpp"

namespace sefield {

struct ChenSteinReport {
  std::int64_t n = 0;
  double r = 0.0;
  double y = 0.0;
  double t = 0.0;  // truncation level of the latent variables
  double u = 0.0;  // threshold u_n(y)
  double p12 = 0.0;
  double mean = 0.0;
  double b1 = 0.0;
  double b2_exponent = 0.0;
  double b2_bound_log = 0.0;
  double total_error_bound = 0.0;
  double alpha = 0.0;  // sqrt(r / (1 - 2r))
  double L = 0.0;      // (u - 2 sqrt(r) t) / sqrt(1 - 2r)
};

inline constexpr double kChenSteinRelTol = 1e-6;
inline constexpr double kChenSteinAbsTol = 1e-30;

// P(G_12 > u_n(y), |X_1| < t_n, |X_2| < t_n).
double p12(std::int64_t n, double r, double y, double rel_tol = kChenSteinRelTol);

// [n(n-1)/2] (2n - 3) p^2: each pair has 2(n-2) one-overlap neighbours plus itself.
double b1(std::int64_t n, double p12_value);

// 2 (1 - sqrt(2r))^2 / (1 - r)
double g_exponent(double r);
// 4/(1+r) + (4 sqrt(r) - sqrt2 (1+r))^2 / (2 (1 - r^2)) - 3
double g_exponent_expanded(double r);

ChenSteinReport chen_stein_report(std::int64_t n, double r, double y, double slack);

// Monte Carlo estimate of P(G_12 >= u, G_13 >= u, |X_1|,|X_2|,|X_3| <= t); only
// sensible at small n where the event is not vanishingly rare.
double joint_exceedance_mc(std::int64_t n, double r, double y, std::size_t reps, RngStream& stream);

}  // namespace sefield
