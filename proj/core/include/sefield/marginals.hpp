#pragma once

#include <array>
#include <string>

#include "sefield/rng.hpp"

namespace sefield {

enum class MarginalKind { standard_normal, uniform_mixture, three_point, rademacher };

// Symmetric, centered, unit-variance law of the coordinates xi.
//
// uniform_mixture(e): Unif[-1,1] with probability 1 - delta and a uniform on
// [-2e,-e] U [e,2e] with probability delta = 2/(7e^2 - 1).
// three_point(L, lambda1): +-sqrt(1 + lambda1/L^2) each with probability
// L^2/(2(lambda1 + L^2)), else 0.
class MarginalSpec {
 public:
  static MarginalSpec standard_normal();
  static MarginalSpec uniform_mixture(double e);
  static MarginalSpec three_point(double logp, double lambda1);
  static MarginalSpec rademacher();

  MarginalKind kind() const noexcept { return kind_; }
  double e() const noexcept { return e_; }
  double logp() const noexcept { return logp_; }
  double lambda1() const noexcept { return lambda1_; }
  double delta() const noexcept { return delta_; }

  // E xi^(2k) for k = 0..7.
  double even_moment(int k) const;
  double kappa() const noexcept { return moments_[2]; }

  // Uses the two uniforms at positions 2m and 2m+1 of the stream.
  double sample_at(const RngStream& stream, std::uint64_t m) const noexcept;

  std::string describe() const;

 private:
  MarginalSpec() = default;
  void fill_moments();

  MarginalKind kind_ = MarginalKind::standard_normal;
  double e_ = 0.0;
  double logp_ = 0.0;
  double lambda1_ = 0.0;
  double delta_ = 0.0;
  double atom_ = 0.0;
  double atom_prob_ = 0.0;
  std::array<double, 8> moments_{};
};

// E xi^(2k), k in 1..7.
double marginal_moments(const MarginalSpec& spec, int k);

}  // namespace sefield
