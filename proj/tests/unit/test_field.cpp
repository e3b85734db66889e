#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles/oracles.hpp"
#include "sefield/errors.hpp"
#include "sefield/field.hpp"
#include "sefield/normalizers.hpp"
#include "sefield/special.hpp"

using namespace sefield;

TEST(Field, ParamsValidation) {
  EXPECT_THROW(make_field_params(1, 0.1), DomainError);
  EXPECT_THROW(make_field_params(5, 0.51), DomainError);
  EXPECT_THROW(make_field_params(5, -0.01), DomainError);
  EXPECT_EQ(make_field_params(5, 0.5 + 1e-13).r, 0.5);
  EXPECT_EQ(make_field_params(5, -1e-13).r, 0.0);
}

TEST(Field, PairIndexIsLexicographic) {
  const std::int64_t n = 9;
  std::uint64_t at = 0;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j) EXPECT_EQ(pair_index(i, j, n), at++);
  EXPECT_EQ(at, pair_count(n));
}

TEST(Field, DenseMatchesNaive) {
  for (double r : {0.0, 0.17, 0.5}) {
    const RngStream s(11, 3);
    const auto g = sample_field_dense(make_field_params(20, r), s);
    const auto o = oracle::field_naive(20, r, s);
    ASSERT_EQ(g.size(), o.size());
    for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(g[k], o[k]);
  }
}

TEST(Field, StreamedMaxEqualsDenseMax) {
  for (std::int64_t n : {2, 3, 5, 17, 40, 64})
    for (double r : {0.0, 0.05, 0.25, 0.49, 0.5})
      for (std::uint64_t rep = 0; rep < 20; ++rep) {
        const auto s = RngStream::replicate(2024, rep);
        EXPECT_EQ(sample_max(make_field_params(n, r), s), oracle::field_max_naive(n, r, s))
            << "n=" << n << " r=" << r << " rep=" << rep;
      }
}

TEST(Field, StreamedMaxEqualsNaiveAtModerateN) {
  for (double r : {0.0, 0.3})
    for (std::uint64_t rep = 0; rep < 3; ++rep) {
      const auto s = RngStream::replicate(5, rep);
      EXPECT_EQ(sample_max(make_field_params(300, r), s), oracle::field_max_naive(300, r, s));
    }
}

TEST(Field, DenseCap) { EXPECT_THROW(sample_field_dense(make_field_params(65, 0.1), RngStream(1)), SizeError); }

TEST(Field, EmpiricalCovariance) {
  // Cov(G_01, G_02) = r, Cov(G_01, G_23) = 0, Var = 1.
  const double r = 0.3;
  const int m = 60000;
  double s11 = 0, s12 = 0, s13 = 0;
  for (int k = 0; k < m; ++k) {
    const auto g = sample_field_dense(make_field_params(4, r), RngStream::replicate(8, static_cast<std::uint64_t>(k)));
    // pairs: 01 02 03 12 13 23
    s11 += g[0] * g[0];
    s12 += g[0] * g[1];
    s13 += g[0] * g[5];
  }
  EXPECT_NEAR(s11 / m, 1.0, 5.0 * std::sqrt(2.0 / m));
  EXPECT_NEAR(s12 / m, r, 5.0 * std::sqrt(1.2 / m));
  EXPECT_NEAR(s13 / m, 0.0, 5.0 * std::sqrt(1.0 / m));
}

TEST(Field, RForLambda) {
  const double r = r_for_lambda(2000, 1.0);
  EXPECT_NEAR((1.0 - 2.0 * r) * std::log(2000.0), 1.0, 1e-14);
  EXPECT_THROW(r_for_lambda(10, 5.0), DomainError);
}

TEST(Field, Standardization) {
  const auto k = norm_constants(500, 0.0);
  const double m = 4.2;
  const double s = kSqrt2 * k.c;
  EXPECT_NEAR(standardize_max(m, 500, CenteringMode::theorem1), s * (m - s) + std::log(4.0 * std::sqrt(kPi) * k.c), 1e-12);
  EXPECT_NEAR(standardize_max(m, 500, CenteringMode::theorem23), k.c * (m - kSqrt2 * k.d), 1e-12);
}

TEST(Graphical, ConstantCorrelationMatchesFieldLaw) {
  const std::int64_t n = 6;
  const double r = 0.2;
  const auto d = pair_count(n);
  std::vector<double> cov(d * d, 0.0);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const int shared = (pairs[a].first == pairs[b].first) + (pairs[a].first == pairs[b].second) +
                         (pairs[a].second == pairs[b].first) + (pairs[a].second == pairs[b].second);
      cov[a * d + b] = shared == 2 ? 1.0 : (shared == 1 ? r : 0.0);
    }
  const auto f = FactoredPairCovariance::factor(n, cov);
  // L L^T reproduces the covariance.
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += f.lower()[a * d + k] * f.lower()[b * d + k];
      EXPECT_NEAR(s, cov[a * d + b], 1e-12);
    }
  // Same distribution of the max as the latent sampler (two-sample means).
  const int m = 20000;
  double a1 = 0, a2 = 0;
  for (int k = 0; k < m; ++k) {
    a1 += sample_max_graphical(n, f, RngStream::replicate(1, static_cast<std::uint64_t>(k)));
    a2 += sample_max_graphical(n, ConstantCorrelation{r}, RngStream::replicate(2, static_cast<std::uint64_t>(k)));
  }
  EXPECT_NEAR(a1 / m, a2 / m, 5.0 * std::sqrt(2.0 * 0.4 / m));
}

TEST(Graphical, RejectsIndefinite) {
  // Three pairs of a 3-vertex graph: correlations .9, .9, 0 is not PSD.
  const std::vector<double> cov = {1.0, 0.9, 0.9, 0.9, 1.0, 0.0, 0.9, 0.0, 1.0};
  try {
    FactoredPairCovariance::factor(3, cov);
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("pivot 2"), std::string::npos) << e.what();
  }
}

TEST(Graphical, Caps) {
  std::vector<double> big(1, 1.0);
  EXPECT_THROW(FactoredPairCovariance::factor(100, big), SizeError);
  EXPECT_THROW(FactoredPairCovariance::factor(3, big), DomainError);
}
