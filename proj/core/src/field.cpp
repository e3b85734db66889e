#include "sefield/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "sefield/errors.hpp"
#include "sefield/normalizers.hpp"
#include "sefield/special.hpp"

namespace sefield {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Above every normal quantile reachable from the uniform grid.
constexpr double kMaxGridNormal = 8.3;

}  // namespace

FieldParams make_field_params(std::int64_t n, double r) {
  if (n < 2) throw DomainError("field: n must be >= 2, got " + std::to_string(n));
  if (!std::isfinite(r)) throw DomainError("field: r must be finite");
  if (r < 0.0) {
    if (r < -1e-12) throw DomainError("field: r must be >= 0, got " + std::to_string(r));
    r = 0.0;
  }
  if (r > 0.5) {
    if (r > 0.5 + 1e-12) throw DomainError("field: r must be <= 1/2, got " + std::to_string(r));
    r = 0.5;
  }
  return FieldParams{n, r};
}

double r_for_lambda(std::int64_t n, double lambda) {
  if (n < 3) throw DomainError("r_for_lambda: n must be >= 3");
  if (!(lambda >= 0.0)) throw DomainError("r_for_lambda: lambda must be >= 0");
  const double f = lambda / std::log(static_cast<double>(n));
  if (f > 1.0) throw DomainError("r_for_lambda: lambda exceeds log n, r would be negative");
  return 0.5 * (1.0 - f);
}

double sample_max(const FieldParams& params, const RngStream& stream) {
  const auto p = make_field_params(params.n, params.r);
  const std::int64_t n = p.n;
  const double sr = std::sqrt(p.r);
  const double sd = std::sqrt(1.0 - 2.0 * p.r);

  std::vector<double> x(static_cast<std::size_t>(n));
  stream.fill_normal(0, x);

  if (sd == 0.0) {
    double a = kNegInf, b = kNegInf;
    for (double v : x) {
      if (v > a) {
        b = a;
        a = v;
      } else if (v > b) {
        b = v;
      }
    }
    return sr * (a + b);
  }

  std::vector<double> suffix_max(static_cast<std::size_t>(n), kNegInf);
  for (std::int64_t i = n - 2; i >= 0; --i)
    suffix_max[i] = std::max(suffix_max[i + 1], x[i + 1]);

  std::vector<std::int64_t> order(static_cast<std::size_t>(n - 1));
  std::iota(order.begin(), order.end(), std::int64_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int64_t a, std::int64_t b) { return x[a] > x[b]; });

  std::vector<double> buf(static_cast<std::size_t>(n));
  double best = kNegInf;
  const auto un = static_cast<std::uint64_t>(n);
  for (const std::int64_t i : order) {
    const double xi = x[i];
    double tail = 1.0;
    if (best != kNegInf) {
      double thr = (best - sr * (xi + suffix_max[i])) / sd;
      thr -= 1e-7 * (1.0 + std::fabs(thr));
      if (thr > kMaxGridNormal) continue;
      tail = normal_sf(thr);
    }
    const std::size_t len = static_cast<std::size_t>(n - 1 - i);
    const std::span<double> row(buf.data(), len);
    stream.fill_uniform(un + pair_index(i, i + 1, n), row);
    for (std::size_t k = 0; k < len; ++k) {
      const double u = row[k];
      if (1.0 - u >= tail) continue;
      const double g = sr * (xi + x[i + 1 + k]) + sd * normal_quantile(u);
      if (g > best) best = g;
    }
  }
  return best;
}

std::vector<double> sample_field_dense(const FieldParams& params, const RngStream& stream,
                                       std::int64_t cap) {
  const auto p = make_field_params(params.n, params.r);
  if (p.n > cap)
    throw SizeError("sample_field_dense: n=" + std::to_string(p.n) + " exceeds cap " +
                    std::to_string(cap));
  const std::int64_t n = p.n;
  const double sr = std::sqrt(p.r);
  const double sd = std::sqrt(1.0 - 2.0 * p.r);
  std::vector<double> x(static_cast<std::size_t>(n));
  stream.fill_normal(0, x);
  std::vector<double> g(pair_count(n));
  stream.fill_normal(static_cast<std::uint64_t>(n), g);
  std::size_t e = 0;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j, ++e) g[e] = sr * (x[i] + x[j]) + sd * g[e];
  return g;
}

double standardize_max(double max, std::int64_t n, CenteringMode mode) {
  const auto k = norm_constants(n, 0.0);
  if (mode == CenteringMode::theorem1) {
    const double s = kSqrt2 * k.c;
    return s * (max - s + std::log(4.0 * std::sqrt(kPi) * k.c) / s);
  }
  return k.c * (max - kSqrt2 * k.d);
}

double standardized_max(const FieldParams& params, CenteringMode mode, const RngStream& stream) {
  if (params.n < 3) throw DomainError("standardized_max: n must be >= 3");
  return standardize_max(sample_max(params, stream), params.n, mode);
}

FactoredPairCovariance FactoredPairCovariance::factor(std::int64_t n,
                                                      std::span<const double> covariance,
                                                      std::size_t cap) {
  if (n < 2) throw DomainError("graphical covariance: n must be >= 2");
  const std::size_t d = pair_count(n);
  if (d > cap)
    throw SizeError("graphical covariance: dimension " + std::to_string(d) + " exceeds cap " +
                    std::to_string(cap));
  if (covariance.size() != d * d)
    throw DomainError("graphical covariance: expected a " + std::to_string(d) + "x" +
                      std::to_string(d) + " matrix");
  for (std::size_t a = 0; a < d; ++a) {
    if (std::fabs(covariance[a * d + a] - 1.0) > 1e-12)
      throw DomainError("graphical covariance: diagonal entry " + std::to_string(a) + " is not 1");
    for (std::size_t b = 0; b < a; ++b)
      if (std::fabs(covariance[a * d + b] - covariance[b * d + a]) > 1e-12)
        throw DomainError("graphical covariance: matrix is not symmetric");
  }

  // Semidefinite Cholesky: zero pivots are allowed when the rest of the
  // column vanishes too.
  const double tol = 1e-10 * static_cast<double>(d);
  std::vector<double> L(d * d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double diag = covariance[j * d + j];
    for (std::size_t k = 0; k < j; ++k) diag -= L[j * d + k] * L[j * d + k];
    if (diag < -tol) {
      std::ostringstream os;
      os << "graphical covariance is not positive semidefinite: pivot " << j << " = " << diag;
      throw NumericError(os.str());
    }
    const bool zero_pivot = diag <= tol;
    const double ljj = zero_pivot ? 0.0 : std::sqrt(diag);
    L[j * d + j] = ljj;
    for (std::size_t i = j + 1; i < d; ++i) {
      double s = covariance[i * d + j];
      for (std::size_t k = 0; k < j; ++k) s -= L[i * d + k] * L[j * d + k];
      if (zero_pivot) {
        if (std::fabs(s) > std::sqrt(tol)) {
          std::ostringstream os;
          os << "graphical covariance is not positive semidefinite: pivot " << j
             << " vanishes but column entry " << i << " = " << s;
          throw NumericError(os.str());
        }
      } else {
        L[i * d + j] = s / ljj;
      }
    }
  }
  FactoredPairCovariance f;
  f.n_ = n;
  f.d_ = d;
  f.lower_ = std::move(L);
  return f;
}

double FactoredPairCovariance::sample_max(const RngStream& stream) const {
  std::vector<double> z(d_);
  stream.fill_normal(0, z);
  double best = kNegInf;
  for (std::size_t i = 0; i < d_; ++i) {
    double g = 0.0;
    const double* row = lower_.data() + i * d_;
    for (std::size_t k = 0; k <= i; ++k) g += row[k] * z[k];
    best = std::max(best, g);
  }
  return best;
}

double sample_max_graphical(std::int64_t n, const GraphicalCovariance& covariance,
                            const RngStream& stream) {
  if (const auto* c = std::get_if<ConstantCorrelation>(&covariance))
    return sample_max(make_field_params(n, c->r), stream);
  const auto& f = std::get<FactoredPairCovariance>(covariance);
  if (f.n() != n) throw DomainError("sample_max_graphical: covariance built for a different n");
  return f.sample_max(stream);
}

}  // namespace sefield
