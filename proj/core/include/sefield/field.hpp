#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "sefield/rng.hpp"

namespace sefield {

// Field on the pairs {i,j}, 1 <= i < j <= n, with correlation r between
// pairs sharing one index and 0 between disjoint pairs.
struct FieldParams {
  std::int64_t n = 2;
  double r = 0.0;
};

// Validates n >= 2 and r in [0, 1/2]; values within 1e-12 outside the
// interval are clamped onto it.
FieldParams make_field_params(std::int64_t n, double r);

// r with (1 - 2r) log n = lambda.
double r_for_lambda(std::int64_t n, double lambda);

enum class CenteringMode { theorem1, theorem23 };

inline std::uint64_t pair_count(std::int64_t n) noexcept {
  const auto m = static_cast<std::uint64_t>(n);
  return m * (m - 1) / 2;
}

// Lexicographic position of the 0-based pair i < j.
inline std::uint64_t pair_index(std::int64_t i, std::int64_t j, std::int64_t n) noexcept {
  const auto a = static_cast<std::uint64_t>(i);
  return a * (2 * static_cast<std::uint64_t>(n) - a - 1) / 2 + static_cast<std::uint64_t>(j - i - 1);
}

// Draw layout inside a replicate stream: latent X_i at positions [0, n),
// pair noise Y_ij at n + pair_index(i, j).
double sample_max(const FieldParams& params, const RngStream& stream);

inline constexpr std::int64_t kDenseFieldCap = 64;

std::vector<double> sample_field_dense(const FieldParams& params, const RngStream& stream,
                                       std::int64_t cap = kDenseFieldCap);

double standardize_max(double max, std::int64_t n, CenteringMode mode);
double standardized_max(const FieldParams& params, CenteringMode mode, const RngStream& stream);

struct ConstantCorrelation {
  double r = 0.0;
};

// Dense factor of an explicit pair covariance (lexicographic pair order).
class FactoredPairCovariance {
 public:
  static constexpr std::size_t kDefaultCap = 2016;

  static FactoredPairCovariance factor(std::int64_t n, std::span<const double> covariance,
                                       std::size_t cap = kDefaultCap);

  std::int64_t n() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return d_; }
  const std::vector<double>& lower() const noexcept { return lower_; }

  // Uses standard normals at stream positions [0, d).
  double sample_max(const RngStream& stream) const;

 private:
  std::int64_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> lower_;
};

using GraphicalCovariance = std::variant<ConstantCorrelation, FactoredPairCovariance>;

double sample_max_graphical(std::int64_t n, const GraphicalCovariance& covariance,
                            const RngStream& stream);

}  // namespace sefield
