#include <gtest/gtest.h>

#include <cmath>

#include "oracles/oracles.hpp"
#include "sefield/apps.hpp"
#include "sefield/errors.hpp"
#include "sefield/normalizers.hpp"
#include "sefield/special.hpp"
#include "sefield/stats.hpp"

using namespace sefield;

TEST(Apps, CorrelationParameters) {
  EXPECT_NEAR(correlation_parameter(Application::interpoint, 3.0, 0.0), 0.25, 1e-16);
  EXPECT_NEAR(correlation_parameter(Application::interpoint, 1.0, 0.0), 0.0, 1e-16);
  EXPECT_NEAR(correlation_parameter(Application::covariance, 3.0, 0.5), 1.0 / 3.0, 1e-16);
  // kappa = 5 removes the quadratic terms.
  EXPECT_NEAR(correlation_parameter(Application::pearson, 5.0, 0.5), 0.25, 1e-16);
  EXPECT_NEAR(correlation_parameter(Application::pearson, 3.0, 0.5), (0.5 - 0.125) / (2.0 - 0.25), 1e-16);
  EXPECT_NEAR(correlation_parameter(Application::pearson, 3.0, 0.5, true), (0.5 - 0.125) / (2.0 - 0.125), 1e-16);
  EXPECT_EQ(correlation_parameter(Application::pearson, 3.0, 0.0), 0.0);
  EXPECT_THROW(correlation_parameter(Application::covariance, 3.0, 1.0), DomainError);
  EXPECT_THROW(correlation_parameter(Application::covariance, 0.5, 0.2), DomainError);
}

TEST(Apps, PearsonParameterIsTCorrelation) {
  for (double kappa : {1.0, 3.0, 7.5})
    for (double rho : {0.1, 0.4, 0.8}) {
      const auto t = t_statistic_table(rho, kappa);
      EXPECT_NEAR(correlation_parameter(Application::pearson, kappa, rho), (t.overlap1 - t.overlap0) / (t.overlap2 - t.overlap0),
                  1e-13);
    }
}

TEST(Apps, InterpointParameterIsDistanceCorrelation) {
  // Corr((x1 - x2)^2, (x1 - x3)^2) for iid coordinates is (kappa - 1)/(2 kappa + 2).
  const auto m = MarginalSpec::three_point(2.0, 1.5);
  const auto law = oracle::atoms(m);
  const double v = oracle::enumerate_expectation(law, 0.0, [](const double* x) {
    const double a = x[0] - x[1], b = x[0] - x[2];
    return (a * a - 2.0) * (b * b - 2.0);
  });
  const double w = oracle::enumerate_expectation(law, 0.0, [](const double* x) {
    const double a = x[0] - x[1];
    return (a * a - 2.0) * (a * a - 2.0);
  });
  EXPECT_NEAR(v / w, correlation_parameter(Application::interpoint, m.kappa(), 0.0), 1e-13);
}

TEST(Apps, ProductCovarianceTableByEnumeration) {
  for (const auto& m : {MarginalSpec::rademacher(), MarginalSpec::three_point(1.3, 0.9)})
    for (double rho : {0.0, 0.4, 0.75}) {
      const auto law = oracle::atoms(m);
      auto e = [&](auto f) { return oracle::enumerate_expectation(law, rho, f); };
      const double t0 = e([](const double* x) { return x[0] * x[1] * x[2] * x[3]; }) - rho * rho;
      const double t1 = e([](const double* x) { return x[0] * x[1] * x[0] * x[2]; }) - rho * rho;
      const double t2 = e([](const double* x) { return x[0] * x[1] * x[0] * x[1]; }) - rho * rho;
      const auto tab = product_covariance_table(rho, m.kappa());
      EXPECT_NEAR(tab.overlap0, t0, 1e-13);
      EXPECT_NEAR(tab.overlap1, t1, 1e-13);
      EXPECT_NEAR(tab.overlap2, t2, 1e-13);
    }
}

TEST(Apps, TStatisticTableByEnumeration) {
  for (const auto& m : {MarginalSpec::rademacher(), MarginalSpec::three_point(1.3, 0.9)})
    for (double rho : {0.0, 0.4, 0.75}) {
      const auto law = oracle::atoms(m);
      auto T = [rho](const double* x, int i, int j) { return x[i] * x[j] - rho / 2.0 * (x[i] * x[i] + x[j] * x[j]); };
      auto e = [&](auto f) { return oracle::enumerate_expectation(law, rho, f); };
      const auto tab = t_statistic_table(rho, m.kappa());
      EXPECT_NEAR(tab.overlap0, e([&](const double* x) { return T(x, 0, 1) * T(x, 2, 3); }), 1e-13);
      EXPECT_NEAR(tab.overlap1, e([&](const double* x) { return T(x, 0, 1) * T(x, 0, 2); }), 1e-13);
      EXPECT_NEAR(tab.overlap2, e([&](const double* x) { return T(x, 0, 1) * T(x, 0, 1); }), 1e-13);
    }
}

TEST(Apps, KernelsEqualNaiveLoops) {
  for (std::int64_t p : {2, 3, 7, 20})
    for (const auto& m : {MarginalSpec::standard_normal(), MarginalSpec::uniform_mixture(10.0)}) {
      const auto d = generate_dataset(PopulationSpec{13, p, 0.3, m}, RngStream(static_cast<std::uint64_t>(p)));
      EXPECT_EQ(max_interpoint(d).D2, oracle::interpoint_d2_naive(d));
      EXPECT_EQ(max_sample_cov(d), oracle::cov_naive(d));
      EXPECT_EQ(max_sample_corr(d), oracle::corr_naive(d));
      EXPECT_EQ(max_uncentered_cov(d), oracle::uncentered_naive(d));
      EXPECT_EQ(max_interpoint(d).D, std::sqrt(max_interpoint(d).D2));
    }
}

TEST(Apps, DatasetLayoutAndCorrelation) {
  const PopulationSpec pop{20000, 3, 0.4, MarginalSpec::standard_normal()};
  const RngStream s(10);
  const auto d = generate_dataset(pop, s);
  EXPECT_EQ(d.values.size(), 60000u);
  // x_ki from the documented variate positions
  const double common = pop.marginal.sample_at(s, 5 * 4);
  EXPECT_EQ(d(5, 2), std::sqrt(0.4) * common + std::sqrt(0.6) * pop.marginal.sample_at(s, 5 * 4 + 3));
  double s01 = 0;
  for (std::int64_t k = 0; k < d.n; ++k) s01 += d(k, 0) * d(k, 1);
  EXPECT_NEAR(s01 / d.n, 0.4, 5.0 * std::sqrt(1.4 / d.n));
}

TEST(Apps, ZeroVarianceColumnRejected) {
  Dataset d;
  d.n = 3;
  d.p = 2;
  d.values = {1.0, 0.0, 1.0, 1.0, 1.0, 2.0};
  EXPECT_THROW(max_sample_corr(d), DomainError);
}

TEST(Apps, StandardizeInterpoint) {
  const double D2 = 4500.0;
  const double z = (D2 - 4000.0) / std::sqrt(2.0 * 2000.0 * 4.0);
  EXPECT_NEAR(raw_interpoint_statistic(D2, 2000, 3.0), z, 1e-14);
  const auto k = norm_constants(200, 0.0);
  EXPECT_NEAR(standardize_interpoint(D2, 2000, 200, 3.0, InterpointMode::gumbel),
              2.0 * k.c * k.c * (z / (kSqrt2 * k.c) - 1.0) + std::log(4.0 * std::sqrt(kPi) * k.c), 1e-11);
  EXPECT_NEAR(standardize_interpoint(D2, 2000, 200, 3.0, InterpointMode::critical), k.c * (z - kSqrt2 * k.d), 1e-12);
}

TEST(Apps, StandardizeRnMn) {
  const double L = std::log(200.0);
  const double cen = 2.0 * std::sqrt(L) - std::log(L) / (4.0 * std::sqrt(L));
  const double R = 0.6 * std::sqrt(3000.0) * std::sqrt(3000.0) + 50.0;
  const double base = R / std::sqrt(3000.0) - 0.6 * std::sqrt(3000.0);
  EXPECT_NEAR(standardize_Rn(R, 3000, 200, 0.6, RnRegime::iii), (base - cen * 0.8) / 0.6, 1e-10);
  EXPECT_NEAR(standardize_Rn(R, 3000, 200, 0.6, RnRegime::i), 2.0 * std::sqrt(L) * (base - cen * 0.8), 1e-10);
  const double cen2 = 2.0 * std::sqrt(L) - (std::log(L) + std::log(4.0 * kPi)) / (2.0 * std::sqrt(L));
  EXPECT_NEAR(standardize_Rn(R, 3000, 200, 0.6, RnRegime::new_ii), L * (base - cen2 * 0.8), 1e-10);
  EXPECT_THROW(standardize_Rn(R, 3000, 200, 0.0, RnRegime::ii), DomainError);

  const double M = 0.7;
  const double star = std::sqrt(3000.0) * (M - 0.6) - 0.4 * std::sqrt(1.0 + 1.2 - 0.36) * cen;
  EXPECT_NEAR(standardize_Mn(M, 3000, 200, 0.6, 3.0, MnRegime::i), 2.0 * std::sqrt(L) * star, 1e-10);
  EXPECT_NEAR(standardize_Mn(M, 3000, 200, 0.6, 3.0, MnRegime::iii), star / 0.24, 1e-10);
}

TEST(Apps, MixtureLawMeans) {
  const double g1_mean = kEulerGamma + std::log(GumbelLaw::g1().mass);
  const int m = 40000;
  std::vector<double> a(m), b(m);
  for (int k = 0; k < m; ++k) {
    const auto s = RngStream::replicate(3, static_cast<std::uint64_t>(k));
    a[k] = mixture_limit_sample(MixtureNormalPlusGumbel{2.0, 3.0}, 0.01, s);
    b[k] = mixture_limit_sample(MixtureNormalPlusG1{0.5, 1.0}, 0.01, s);
  }
  const auto sa = mc_summary(a), sb = mc_summary(b);
  const double gv = kPi * kPi / 6.0;
  EXPECT_NEAR(sa.mean, g1_mean / 4.0, 4.0 * sa.std_error);
  EXPECT_NEAR(sa.variance, gv / 16.0 + 2.0, 0.08);
  EXPECT_NEAR(sb.mean, g1_mean, 4.0 * sb.std_error);
  EXPECT_NEAR(sb.variance, 1.0 + gv, 0.08);
  EXPECT_TRUE(std::isfinite(mixture_limit_sample(MixtureNormalPlusScaledSup{1.0, 2.0}, 0.05, RngStream(1))));
}

TEST(Apps, RegimeClassification) {
  const auto normal = classify_regime(PopulationSpec{2000, 200, 0.0, MarginalSpec::standard_normal()}, Application::interpoint);
  EXPECT_EQ(normal.zone, RegimeZone::gumbel);
  EXPECT_NEAR(normal.r, 0.25, 1e-15);
  EXPECT_NEAR(normal.lambda, 0.5 * std::log(200.0), 1e-14);
  const auto mix =
      classify_regime(PopulationSpec{1000, 1000000, 0.0, MarginalSpec::uniform_mixture(10.0)}, Application::interpoint);
  EXPECT_EQ(mix.zone, RegimeZone::critical);
  EXPECT_NEAR(mix.lambda, 0.155, 0.001);
  EXPECT_TRUE(mix.flags.b3);
  EXPECT_TRUE(mix.flags.c3);
  // with exponent 5 the ratio grows like e^2
  const auto m20 = MarginalSpec::uniform_mixture(20.0), m10 = MarginalSpec::uniform_mixture(10.0);
  EXPECT_GT(m20.even_moment(7) / std::pow(m20.kappa(), 5.0), 3.5 * m10.even_moment(7) / std::pow(m10.kappa(), 5.0));
  const auto deg = classify_regime(PopulationSpec{100, 100, 0.0, MarginalSpec::uniform_mixture(100.0)}, Application::interpoint);
  EXPECT_EQ(deg.zone, RegimeZone::degenerate);
  EXPECT_EQ(to_string(RegimeZone::critical), "critical");
  EXPECT_EQ(to_string(Application::pearson), "pearson");
}
