#include <gtest/gtest.h>

#include <cmath>

#include "oracles/frozen.hpp"
#include "sefield/special.hpp"

using namespace sefield;

TEST(Special, QuantileMatchesHighPrecision) {
  for (const auto& [p, z] : frozen::kNormalQuantiles) {
    const double got = normal_quantile(p);
    EXPECT_NEAR(got, z, 1e-14 * std::max(1.0, std::abs(z))) << "p=" << p;
  }
  EXPECT_EQ(normal_quantile(0.0), -INFINITY);
  EXPECT_EQ(normal_quantile(1.0), INFINITY);
}

TEST(Special, QuantileRoundTrip) {
  for (double p = 1e-6; p < 1.0; p += 0.0137) EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 4e-16 + 1e-14 * p);
}

TEST(Special, LogTailFarOut) {
  for (const auto& [x, v] : frozen::kNormalLogSf) EXPECT_NEAR(normal_log_sf(x), v, 1e-12 * std::abs(v)) << x;
  EXPECT_NEAR(normal_log_sf(0.0), std::log(0.5), 1e-15);
  EXPECT_NEAR(normal_log_sf(-3.0), std::log(normal_cdf(3.0)), 1e-15);
}

TEST(Special, LogTailIsContinuousAcrossBranches) {
  for (double x : {-5.0, 37.0}) EXPECT_NEAR(normal_log_sf(std::nextafter(x, -100.0)), normal_log_sf(std::nextafter(x, 100.0)), 1e-12);
}

TEST(Special, UpperQuantileLog) {
  EXPECT_NEAR(normal_upper_quantile_log(-5000.0), frozen::kIsfLogMinus5000, 1e-10);
  for (double lq : {-0.7, -2.0, -30.0, -300.0, -700.0, -701.0, -1e4, -1e6}) {
    const double z = normal_upper_quantile_log(lq);
    EXPECT_NEAR(normal_log_sf(z), lq, 1e-9 * std::abs(lq)) << lq;
  }
}

TEST(Special, QuantileLog) {
  for (double lp : {-1e-12, -1e-3, -0.1, -0.693, -5.0, -200.0}) {
    const double z = normal_quantile_log(lp);
    EXPECT_NEAR(normal_log_cdf(z), lp, 1e-10 * std::abs(lp)) << lp;
  }
}

TEST(Special, LogAddExp) {
  EXPECT_NEAR(log_add_exp(std::log(2.0), std::log(3.0)), std::log(5.0), 1e-15);
  EXPECT_EQ(log_add_exp(-INFINITY, 1.5), 1.5);
  EXPECT_NEAR(log_add_exp(1000.0, 1000.0), 1000.0 + std::log(2.0), 1e-12);
}
