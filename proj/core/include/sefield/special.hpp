#pragma once

namespace sefield {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2 = 1.414213562373095048801688724209698079;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
inline constexpr double kLogSqrt2Pi = 0.918938533204672741780329736405617640;

double normal_pdf(double x) noexcept;
double normal_cdf(double x) noexcept;
// Upper tail 1 - Phi(x), accurate far into the right tail.
double normal_sf(double x) noexcept;
double normal_log_cdf(double x) noexcept;
double normal_log_sf(double x) noexcept;

// Wichura's AS241 (PPND16); p in (0,1), returns +-inf at the endpoints.
double normal_quantile(double p) noexcept;

// z with log(1 - Phi(z)) = log_q, for any log_q <= log(0.5). Valid far
// beyond the range where exp(log_q) is representable.
double normal_upper_quantile_log(double log_q) noexcept;

// z with log Phi(z) = log_p, for log_p <= 0.
double normal_quantile_log(double log_p) noexcept;

double log_add_exp(double a, double b) noexcept;

}  // namespace sefield
