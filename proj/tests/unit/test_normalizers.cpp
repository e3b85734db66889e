#include <gtest/gtest.h>

#include <cmath>

#include "oracles/frozen.hpp"
#include "sefield/errors.hpp"
#include "sefield/normalizers.hpp"
#include "sefield/special.hpp"

using namespace sefield;

TEST(Normalizers, ConstantsAtThousand) {
  const auto k = norm_constants(1000, 0.2);
  EXPECT_NEAR(k.c, frozen::kC1000, 1e-14);
  EXPECT_NEAR(k.d, frozen::kD1000, 1e-14);
  EXPECT_NEAR(k.t, frozen::kT1000, 1e-14);
  EXPECT_NEAR(k.f, 0.6, 1e-15);
  EXPECT_NEAR(threshold_u(1000, 0.0), frozen::kU1000Y0, 1e-14);
}

TEST(Normalizers, Domain) {
  EXPECT_THROW(norm_constants(2, 0.0), DomainError);
  EXPECT_THROW(norm_constants(10, 0.6), DomainError);
  EXPECT_THROW(norm_constants(10, -0.1), DomainError);
  EXPECT_THROW(scale_c(1), DomainError);
}

TEST(Normalizers, DIsBelowC) {
  for (std::int64_t n : {16, 1000, 1000000}) {
    const auto k = norm_constants(n, 0.0);
    EXPECT_LT(k.d, k.c);
    EXPECT_GT(k.t, k.c);
  }
}

TEST(Gumbel, QuantileRoundTrip) {
  for (const auto law : {GumbelLaw::standard(), GumbelLaw::g1(), GumbelLaw{3.5}})
    for (double a = 1e-6; a < 1.0; a *= 1.7) {
      const double x = gumbel_quantile(a, law);
      EXPECT_NEAR(1.0 - gumbel_cdf(x, law), a, 1e-12 * std::max(a, 1e-3));
    }
}

TEST(Gumbel, G1Quantile) {
  EXPECT_NEAR(gumbel_quantile(0.05, GumbelLaw::g1()), frozen::kQG1005, 1e-13);
  EXPECT_NEAR(GumbelLaw::g1().mass, 1.0 / (4.0 * std::sqrt(2.0 * kPi)), 1e-16);
}

TEST(Gumbel, QuantileMonotone) {
  const auto law = GumbelLaw::g1();
  EXPECT_GT(gumbel_quantile(0.01, law), gumbel_quantile(0.05, law));
  EXPECT_GT(gumbel_quantile(0.05, law), gumbel_quantile(0.10, law));
  EXPECT_THROW(gumbel_quantile(0.0, law), DomainError);
  EXPECT_THROW(gumbel_quantile(1.0, law), DomainError);
}

TEST(Gumbel, SampleMean) {
  RngStream s(31);
  const int m = 100000;
  double total = 0;
  for (int k = 0; k < m; ++k) total += sample_gumbel(GumbelLaw::standard(), s);
  EXPECT_NEAR(total / m, kEulerGamma, 4.0 * (kPi / std::sqrt(6.0)) / std::sqrt(m));
}
