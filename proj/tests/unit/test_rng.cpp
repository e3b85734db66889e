#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "sefield/rng.hpp"

using sefield::Philox4x32;
using sefield::RngStream;

TEST(Philox, KnownAnswerZero) {
  const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out[0], 0x408f276du);
  EXPECT_EQ(out[1], 0x41c83b0eu);
  EXPECT_EQ(out[2], 0xa20bc7c6u);
  EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out[0], 0xd16cfe09u);
  EXPECT_EQ(out[1], 0x94fdccebu);
  EXPECT_EQ(out[2], 0x5001e420u);
  EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(RngStream, RandomAccessMatchesSequential) {
  RngStream s(42, 7);
  std::vector<double> seq;
  for (int k = 0; k < 100; ++k) seq.push_back(s.uniform());
  RngStream t(42, 7);
  for (int k = 99; k >= 0; --k) EXPECT_EQ(t.uniform_at(static_cast<std::uint64_t>(k)), seq[static_cast<std::size_t>(k)]);
}

TEST(RngStream, FillMatchesPointwise) {
  RngStream s(1, 2);
  std::vector<double> u(37), z(37);
  s.fill_uniform(11, u);
  s.fill_normal(11, z);
  for (std::size_t k = 0; k < u.size(); ++k) {
    EXPECT_EQ(u[k], s.uniform_at(11 + k));
    EXPECT_EQ(z[k], s.normal_at(11 + k));
  }
}

TEST(RngStream, UniformsInOpenInterval) {
  EXPECT_GT(sefield::bits_to_uniform(0), 0.0);
  EXPECT_LT(sefield::bits_to_uniform(~0ull), 1.0);
}

TEST(RngStream, StreamsDiffer) {
  std::set<double> seen;
  for (std::uint64_t id = 0; id < 50; ++id) seen.insert(RngStream::replicate(9, id).uniform_at(0));
  for (std::uint64_t tag = 0; tag < 50; ++tag) seen.insert(RngStream(9).child(tag).uniform_at(0));
  EXPECT_EQ(seen.size(), 100u);
  EXPECT_NE(RngStream(1).uniform_at(0), RngStream(2).uniform_at(0));
}

TEST(RngStream, SplitAdvancesAndIsReproducible) {
  RngStream a(5), b(5);
  auto a1 = a.split();
  auto a2 = a.split();
  EXPECT_EQ(a.position(), 2u);
  EXPECT_NE(a1.uniform_at(0), a2.uniform_at(0));
  EXPECT_EQ(b.split().uniform_at(3), a1.uniform_at(3));
}

TEST(RngStream, NormalMoments) {
  RngStream s(123);
  const int m = 200000;
  double s1 = 0, s2 = 0, s4 = 0;
  for (int k = 0; k < m; ++k) {
    const double z = s.normal();
    s1 += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  EXPECT_NEAR(s1 / m, 0.0, 4.0 / std::sqrt(m));
  EXPECT_NEAR(s2 / m, 1.0, 4.0 * std::sqrt(2.0 / m));
  EXPECT_NEAR(s4 / m, 3.0, 4.0 * std::sqrt(96.0 / m));
}

TEST(RngStream, ExponentialMean) {
  RngStream s(77);
  const int m = 100000;
  double total = 0;
  for (int k = 0; k < m; ++k) total += s.exponential();
  EXPECT_NEAR(total / m, 1.0, 4.0 / std::sqrt(m));
}
