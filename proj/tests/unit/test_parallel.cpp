#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>

#include "sefield/parallel.hpp"

using namespace sefield;

TEST(Parallel, EveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(1000, 4, [&](std::uint64_t i) { hits[i].fetch_add(1); });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, MapIsWorkerInvariant) {
  auto f = [](std::uint64_t i) { return static_cast<double>(i * i) / 7.0; };
  EXPECT_EQ(parallel_map(500, 1, f), parallel_map(500, 8, f));
}

TEST(Parallel, ExceptionPropagates) {
  EXPECT_THROW(parallel_for(100, 3,
                            [](std::uint64_t i) {
                              if (i == 42) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
  parallel_for(0, 3, [](std::uint64_t) { FAIL(); });
}
