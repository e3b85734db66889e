#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "sefield/rng.hpp"

namespace sefield {

// standard: u = q/(2 sqrt(L)) + 2 sqrt(L) - log L / (4 sqrt(L)),  L = log n
// log4pi:   u = q/(2 sqrt(L)) + 2 sqrt(L) - (log L + log 4pi) / (4 sqrt(L))
// with q the upper alpha quantile of G1. The log4pi centering sits about
// (log 4pi)/(4 sqrt(L)) too low and overshoots the nominal level.
enum class FwerVariant { standard, log4pi };

struct FwerThreshold {
  std::int64_t n = 0;
  double alpha = 0.0;
  double q_alpha = 0.0;
  double u = 0.0;
  FwerVariant variant = FwerVariant::standard;
};

FwerThreshold threshold(std::int64_t n, double alpha, FwerVariant variant = FwerVariant::standard);

struct FwerEstimate {
  double rate = 0.0;
  double half_width = 0.0;  // 1.96 standard errors
  std::uint64_t rejections = 0;
  std::uint64_t reps = 0;
  double u = 0.0;
};

// Replicate k uses RngStream::replicate(seed, k) with field::sample_max.
FwerEstimate fwer_estimate(std::int64_t n, double r, double alpha, std::uint64_t reps, std::uint64_t seed,
                           unsigned workers = 0, FwerVariant variant = FwerVariant::standard);
// Same, reusing precomputed replicate maxima.
FwerEstimate fwer_from_maxima(const std::vector<double>& maxima, double u);

// 1-based vertex labels, i < j.
struct PairObservation {
  std::int64_t i = 0;
  std::int64_t j = 0;
  double value = 0.0;
};

struct PairLabel {
  std::int64_t i = 0;
  std::int64_t j = 0;
  friend bool operator==(const PairLabel&, const PairLabel&) = default;
};

// Pairs with value > u (strict), in lexicographic order. Every pair of
// 1..n must be present exactly once.
std::vector<PairLabel> reject_set(std::int64_t n, const std::vector<PairObservation>& observations, double u);

// Rows "i,j,value"; an optional header row and '#' comments are skipped.
std::vector<PairObservation> read_observations_csv(std::istream& in);
std::vector<PairObservation> read_observations_csv_file(const std::filesystem::path& path);

}  // namespace sefield
