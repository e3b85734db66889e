#include "sefield/chenstein.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sefield/errors.hpp"
#include "sefield/normalizers.hpp"
#include "sefield/quadrature.hpp"
#include "sefield/special.hpp"

namespace sefield {

namespace {

void check_inputs(std::int64_t n, double r) {
  if (n < 3) throw DomainError("chen-stein: n must be >= 3, got " + std::to_string(n));
  if (!(r >= 0.0 && r <= 0.5)) throw DomainError("chen-stein: r must lie in [0, 1/2]");
}

void require_converged(const QuadratureResult& q, const char* what) {
  if (q.converged) return;
  std::ostringstream os;
  os << "p12 quadrature (" << what << ") did not converge: value " << q.value << ", error estimate "
     << q.error;
  throw NumericError(os.str());
}

}  // namespace

double p12(std::int64_t n, double r, double y, double rel_tol) {
  check_inputs(n, r);
  const auto k = norm_constants(n, r);
  const double t = k.t;
  const double u = threshold_u(n, y);
  const double sr = std::sqrt(r);
  const double sd = std::sqrt(1.0 - 2.0 * r);
  const double inner_tol = rel_tol * 1e-2;

  std::vector<double> outer_breaks;
  std::function<double(double)> inner;
  if (sd == 0.0) {
    // Indicator {x1 + x2 > sqrt2 u}: the inner integral is a normal probability.
    const double s = kSqrt2 * u;
    outer_breaks = breakpoints(-t, t, {s - t});
    inner = [=](double x1) {
      const double lo = s - x1;
      if (lo >= t) return 0.0;
      return lo <= -t ? normal_cdf(t) - normal_cdf(-t) : normal_cdf(t) - normal_cdf(lo);
    };
  } else {
    const double pivot = sr > 0.0 ? u / sr : 0.0;
    outer_breaks = sr > 0.0 ? breakpoints(-t, t, {pivot - t, pivot + t}) : breakpoints(-t, t, {});
    inner = [=](double x1) {
      auto f = [=](double x2) { return normal_sf((u - sr * (x1 + x2)) / sd) * normal_pdf(x2); };
      const auto br = sr > 0.0 ? breakpoints(-t, t, {pivot - x1}) : breakpoints(-t, t, {});
      const auto q = integrate(f, std::span<const double>(br), inner_tol, kChenSteinAbsTol * 1e-3);
      require_converged(q, "inner");
      return q.value;
    };
  }
  auto outer = [&](double x1) { return normal_pdf(x1) * inner(x1); };
  const auto q = integrate(outer, std::span<const double>(outer_breaks), rel_tol, kChenSteinAbsTol);
  require_converged(q, "outer");
  return std::clamp(q.value, 0.0, 1.0);
}

double b1(std::int64_t n, double p12_value) {
  if (n < 3) throw DomainError("b1: n must be >= 3");
  if (!(p12_value >= 0.0 && p12_value <= 1.0)) throw DomainError("b1: p12 must lie in [0,1]");
  const double nn = static_cast<double>(n);
  return nn * (nn - 1.0) / 2.0 * (2.0 * nn - 3.0) * p12_value * p12_value;
}

double g_exponent(double r) {
  if (!(r >= 0.0 && r <= 0.5)) throw DomainError("g_exponent: r must lie in [0, 1/2]");
  const double a = 1.0 - std::sqrt(2.0 * r);
  return 2.0 * a * a / (1.0 - r);
}

double g_exponent_expanded(double r) {
  if (!(r >= 0.0 && r <= 0.5)) throw DomainError("g_exponent: r must lie in [0, 1/2]");
  const double a = 4.0 * std::sqrt(r) - kSqrt2 * (1.0 + r);
  return 4.0 / (1.0 + r) + a * a / (2.0 * (1.0 - r * r)) - 3.0;
}

ChenSteinReport chen_stein_report(std::int64_t n, double r, double y, double slack) {
  check_inputs(n, r);
  if (!(slack >= 0.0)) throw DomainError("chen-stein: slack must be >= 0");
  const auto k = norm_constants(n, r);
  ChenSteinReport rep;
  rep.n = n;
  rep.r = r;
  rep.y = y;
  rep.t = k.t;
  rep.u = threshold_u(n, y);
  rep.p12 = p12(n, r, y);
  const double nn = static_cast<double>(n);
  rep.mean = nn * (nn - 1.0) / 2.0 * rep.p12;
  rep.b1 = b1(n, rep.p12);
  rep.b2_exponent = g_exponent(r);
  rep.b2_bound_log = -rep.b2_exponent * std::log(nn) + slack * k.T;
  rep.total_error_bound = rep.b1 + std::exp(rep.b2_bound_log);
  rep.alpha = std::sqrt(r / (1.0 - 2.0 * r));
  rep.L = (rep.u - 2.0 * std::sqrt(r) * rep.t) / std::sqrt(1.0 - 2.0 * r);
  return rep;
}

double joint_exceedance_mc(std::int64_t n, double r, double y, std::size_t reps, RngStream& stream) {
  check_inputs(n, r);
  if (reps == 0) throw DomainError("joint_exceedance_mc: reps must be positive");
  const auto k = norm_constants(n, r);
  const double u = threshold_u(n, y);
  const double sr = std::sqrt(r);
  const double sd = std::sqrt(1.0 - 2.0 * r);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < reps; ++i) {
    const double x1 = stream.normal(), x2 = stream.normal(), x3 = stream.normal();
    const double y12 = stream.normal(), y13 = stream.normal();
    if (std::fabs(x1) > k.t || std::fabs(x2) > k.t || std::fabs(x3) > k.t) continue;
    if (sr * (x1 + x2) + sd * y12 >= u && sr * (x1 + x3) + sd * y13 >= u) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(reps);
}

}  // namespace sefield
