#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sefield {

class Ecdf {
 public:
  explicit Ecdf(std::span<const double> sample);

  // #{values <= x} / count
  double operator()(double x) const noexcept;
  std::size_t count() const noexcept { return sorted_.size(); }
  const std::vector<double>& sorted() const noexcept { return sorted_; }

 private:
  std::vector<double> sorted_;
};

struct KsResult {
  double statistic = 0.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;  // 0 for the one-sample test
  double location = 0.0;
};

KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf);
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct McSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0;
};

McSummary mc_summary(std::span<const double> samples);

// Neumaier compensated sum.
double compensated_sum(std::span<const double> values) noexcept;

}  // namespace sefield
