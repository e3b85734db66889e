#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {
constexpr long double kSqrt2L = 1.41421356237309504880168872420969808L;
constexpr long double kPiL = 3.14159265358979323846264338327950288L;

long double simpson_rec(const std::function<long double(long double)>& f, long double a, long double b,
                        long double fa, long double fm, long double fb, long double whole, long double tol, int depth) {
  const long double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
  const long double flm = f(lm), frm = f(rm);
  const long double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const long double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const long double diff = left + right - whole;
  if (depth <= 0 || std::fabs(diff) <= 15 * tol) return left + right + diff / 15;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}
}  // namespace

long double normal_cdf(long double x) { return std::erfc(-x / kSqrt2L) / 2; }
long double normal_sf(long double x) { return std::erfc(x / kSqrt2L) / 2; }
long double normal_pdf(long double x) { return std::exp(-x * x / 2) / std::sqrt(2 * kPiL); }

long double simpson(const std::function<long double(long double)>& f, long double a, long double b, long double tol,
                    int depth) {
  const long double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  const long double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

double pair_sum_cdf(double s) {
  const long double t = static_cast<long double>(s) * kSqrt2L;
  auto f = [t](long double y) {
    return std::exp(-y) * std::exp(-std::exp(-y)) * (std::exp(-y) - std::exp(-(t - y)));
  };
  const long double lo = std::min<long double>(-6.0L, t / 2 - 6);
  // split so the adaptive rule sees the peak
  long double total = 0;
  const int pieces = 16;
  for (int k = 0; k < pieces; ++k) {
    const long double a = lo + (t / 2 - lo) * k / pieces;
    const long double b = lo + (t / 2 - lo) * (k + 1) / pieces;
    total += simpson(f, a, b, 1e-15L);
  }
  return static_cast<double>(total);
}

double pair_sum_cdf_closed(double s) {
  const double x = std::exp(-s / std::sqrt(2.0));
  if (x > 700.0) return 0.0;
  return std::exp(-x) * (1.0 + x) + x * x * std::expint(-x);
}

double p12_direct(double u, double t, double r) {
  const long double lu = u, lt = t, lr = r;
  if (r == 0.5) {
    auto outer = [&](long double x1) {
      const long double lo = std::max(-lt, lu * kSqrt2L - x1);
      if (lo >= lt) return 0.0L;
      return normal_pdf(x1) * (normal_cdf(lt) - normal_cdf(lo));
    };
    const long double kink = lu * kSqrt2L - lt;
    if (kink <= -lt) return static_cast<double>(simpson(outer, -lt, lt, 1e-18L));
    return static_cast<double>(simpson(outer, -lt, std::min(kink, lt), 1e-18L) +
                               (kink < lt ? simpson(outer, kink, lt, 1e-18L) : 0.0L));
  }
  const long double sr = std::sqrt(lr), s = std::sqrt(1 - 2 * lr);
  auto outer = [&](long double x1) {
    auto inner = [&](long double x2) { return normal_pdf(x2) * normal_sf((lu - sr * (x1 + x2)) / s); };
    return normal_pdf(x1) * (simpson(inner, -lt, 0, 1e-19L, 30) + simpson(inner, 0, lt, 1e-19L, 30));
  };
  return static_cast<double>(simpson(outer, -lt, 0, 1e-17L, 30) + simpson(outer, 0, lt, 1e-17L, 30));
}

std::vector<double> field_naive(std::int64_t n, double r, const sefield::RngStream& stream) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = stream.normal_at(static_cast<std::uint64_t>(i));
  std::vector<double> g;
  std::uint64_t pos = static_cast<std::uint64_t>(n);
  const double a = std::sqrt(r), b = std::sqrt(1.0 - 2.0 * r);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j)
      g.push_back(a * (x[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(j)]) + b * stream.normal_at(pos++));
  return g;
}

double field_max_naive(std::int64_t n, double r, const sefield::RngStream& stream) {
  const auto g = field_naive(n, r, stream);
  double best = -INFINITY;
  for (double v : g) best = std::max(best, v);
  return best;
}

namespace {
template <class Op>
double pair_max(const sefield::Dataset& d, Op op) {
  double best = -INFINITY;
  for (std::int64_t i = 0; i < d.p; ++i)
    for (std::int64_t j = i + 1; j < d.p; ++j) {
      double s = 0.0;
      for (std::int64_t k = 0; k < d.n; ++k) s += op(k, i, j);
      best = std::max(best, s);
    }
  return best;
}

std::vector<double> column_means(const sefield::Dataset& d) {
  std::vector<double> m(static_cast<std::size_t>(d.p), 0.0);
  for (std::int64_t k = 0; k < d.n; ++k)
    for (std::int64_t i = 0; i < d.p; ++i) m[static_cast<std::size_t>(i)] += d(k, i);
  for (auto& v : m) v /= static_cast<double>(d.n);
  return m;
}
}  // namespace

double interpoint_d2_naive(const sefield::Dataset& d) {
  return pair_max(d, [&](std::int64_t k, std::int64_t i, std::int64_t j) {
    const double t = d(k, i) - d(k, j);
    return t * t;
  });
}

double cov_naive(const sefield::Dataset& d) {
  const auto m = column_means(d);
  return pair_max(d, [&](std::int64_t k, std::int64_t i, std::int64_t j) {
    return (d(k, i) - m[static_cast<std::size_t>(i)]) * (d(k, j) - m[static_cast<std::size_t>(j)]);
  });
}

double corr_naive(const sefield::Dataset& d) {
  const auto m = column_means(d);
  std::vector<double> ss(static_cast<std::size_t>(d.p), 0.0);
  for (std::int64_t k = 0; k < d.n; ++k)
    for (std::int64_t i = 0; i < d.p; ++i) {
      const double y = d(k, i) - m[static_cast<std::size_t>(i)];
      ss[static_cast<std::size_t>(i)] += y * y;
    }
  double best = -INFINITY;
  for (std::int64_t i = 0; i < d.p; ++i)
    for (std::int64_t j = i + 1; j < d.p; ++j) {
      double s = 0.0;
      for (std::int64_t k = 0; k < d.n; ++k)
        s += (d(k, i) - m[static_cast<std::size_t>(i)]) * (d(k, j) - m[static_cast<std::size_t>(j)]);
      best = std::max(best, s / (std::sqrt(ss[static_cast<std::size_t>(i)]) * std::sqrt(ss[static_cast<std::size_t>(j)])));
    }
  return best;
}

double uncentered_naive(const sefield::Dataset& d) {
  return pair_max(d, [&](std::int64_t k, std::int64_t i, std::int64_t j) { return d(k, i) * d(k, j); });
}

std::vector<Atom> atoms(const sefield::MarginalSpec& m) {
  switch (m.kind()) {
    case sefield::MarginalKind::rademacher:
      return {{-1.0, 0.5}, {1.0, 0.5}};
    case sefield::MarginalKind::three_point: {
      const double L2 = m.logp() * m.logp();
      const double a = std::sqrt(1.0 + m.lambda1() / L2);
      const double q = L2 / (2.0 * (m.lambda1() + L2));
      return {{-a, q}, {0.0, 1.0 - 2.0 * q}, {a, q}};
    }
    default:
      throw std::invalid_argument("atoms: marginal has no finite support");
  }
}

double enumerate_expectation(const std::vector<Atom>& law, double rho, const std::function<double(const double*)>& f) {
  const std::size_t m = law.size();
  const double a = std::sqrt(rho), b = std::sqrt(1.0 - rho);
  long double total = 0;
  std::size_t idx[5] = {0, 0, 0, 0, 0};
  std::size_t combos = 1;
  for (int k = 0; k < 5; ++k) combos *= m;
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t rest = c;
    long double prob = 1;
    for (int k = 0; k < 5; ++k) {
      idx[k] = rest % m;
      rest /= m;
      prob *= law[idx[k]].prob;
    }
    double x[4];
    for (int k = 0; k < 4; ++k) x[k] = a * law[idx[0]].value + b * law[idx[k + 1]].value;
    total += prob * f(x);
  }
  return static_cast<double>(total);
}

}  // namespace oracle
