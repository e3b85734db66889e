#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace sefield {

// Philox4x32-10 (Salmon, Moraes, Dror, Shaw 2011).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) noexcept;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Maps 64 random bits to the open interval (0,1): midpoints of a 2^-52 grid.
inline double bits_to_uniform(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

// A counter-based stream of uniforms indexed by a 64-bit position.
//
// The key is the master seed and the upper counter words hold the stream
// id, so (seed, stream id, position) fully determines every draw. Random
// access and sequential access read the same sequence.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept;

  // Stream owned by Monte Carlo replicate `index` of an experiment.
  static RngStream replicate(std::uint64_t seed, std::uint64_t index) noexcept {
    return RngStream(seed, index);
  }

  // Independent substream; tags are hashed so children never collide with
  // replicate ids in practice.
  RngStream child(std::uint64_t tag) const noexcept;

  // Child keyed by the current position; advances the position by one, so
  // repeated calls hand out distinct substreams.
  RngStream split() noexcept { return child(pos_++); }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }
  std::uint64_t position() const noexcept { return pos_; }
  void seek(std::uint64_t pos) noexcept { pos_ = pos; }

  std::uint64_t bits_at(std::uint64_t pos) const noexcept;
  double uniform_at(std::uint64_t pos) const noexcept { return bits_to_uniform(bits_at(pos)); }
  double normal_at(std::uint64_t pos) const noexcept;
  void fill_uniform(std::uint64_t pos, std::span<double> out) const noexcept;
  void fill_normal(std::uint64_t pos, std::span<double> out) const noexcept;

  double uniform() noexcept { return uniform_at(pos_++); }
  double normal() noexcept { return normal_at(pos_++); }
  double exponential() noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t pos_ = 0;
  Philox4x32::Key key_;
};

}  // namespace sefield
