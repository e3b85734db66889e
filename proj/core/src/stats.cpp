#include "sefield/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sefield/errors.hpp"

namespace sefield {

namespace {

std::vector<double> sorted_copy(std::span<const double> s, const char* what) {
  std::vector<double> v(s.begin(), s.end());
  for (double x : v)
    if (std::isnan(x)) throw DomainError(std::string(what) + ": sample contains NaN");
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

Ecdf::Ecdf(std::span<const double> sample) : sorted_(sorted_copy(sample, "Ecdf")) {
  if (sorted_.empty()) throw DomainError("Ecdf: empty sample");
}

double Ecdf::operator()(double x) const noexcept {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw DomainError("ks_one_sample: empty sample");
  const auto x = sorted_copy(sample, "ks_one_sample");
  const double m = static_cast<double>(x.size());
  KsResult res;
  res.n1 = x.size();
  res.statistic = -1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    const double d = std::max(f - static_cast<double>(i) / m, static_cast<double>(i + 1) / m - f);
    if (d > res.statistic) {
      res.statistic = d;
      res.location = x[i];
    }
  }
  res.statistic = std::clamp(res.statistic, 0.0, 1.0);
  return res;
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  const auto x = sorted_copy(a, "ks_two_sample");
  const auto y = sorted_copy(b, "ks_two_sample");
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  KsResult res;
  res.n1 = x.size();
  res.n2 = y.size();
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    double v;
    if (j == y.size() || (i < x.size() && x[i] <= y[j]))
      v = x[i];
    else
      v = y[j];
    // consume every tie at v before comparing
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    const double d = std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb);
    if (d > res.statistic) {
      res.statistic = d;
      res.location = v;
    }
  }
  return res;
}

double compensated_sum(std::span<const double> values) noexcept {
  double sum = 0.0, c = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      c += (sum - t) + v;
    else
      c += (v - t) + sum;
    sum = t;
  }
  return sum + c;
}

McSummary mc_summary(std::span<const double> samples) {
  if (samples.size() < 2) throw DomainError("mc_summary: need at least two samples");
  McSummary s;
  s.count = samples.size();
  const double m = static_cast<double>(s.count);
  s.mean = compensated_sum(samples) / m;
  std::vector<double> dev(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double d = samples[k] - s.mean;
    dev[k] = d * d;
  }
  s.variance = compensated_sum(dev) / (m - 1.0);
  s.std_error = std::sqrt(s.variance / m);
  return s;
}

}  // namespace sefield
