#include "sefield/rng.hpp"

#include <cmath>

#include "sefield/special.hpp"

namespace sefield {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed),
      stream_(stream_id),
      key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

RngStream RngStream::child(std::uint64_t tag) const noexcept {
  const std::uint64_t id = splitmix64(stream_ ^ splitmix64(tag + 0x632BE59BD9B4E019ull));
  return RngStream(seed_, id | (1ull << 63));
}

std::uint64_t RngStream::bits_at(std::uint64_t pos) const noexcept {
  const std::uint64_t blk = pos >> 1;
  const auto out = Philox4x32::block(
      {static_cast<std::uint32_t>(blk), static_cast<std::uint32_t>(blk >> 32),
       static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
      key_);
  if (pos & 1u) return (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

double RngStream::normal_at(std::uint64_t pos) const noexcept {
  return normal_quantile(uniform_at(pos));
}

void RngStream::fill_uniform(std::uint64_t pos, std::span<double> out) const noexcept {
  std::size_t k = 0;
  const std::size_t m = out.size();
  if (m == 0) return;
  if (pos & 1u) out[k++] = uniform_at(pos);
  std::uint64_t blk = (pos + k) >> 1;
  const std::uint32_t s0 = static_cast<std::uint32_t>(stream_);
  const std::uint32_t s1 = static_cast<std::uint32_t>(stream_ >> 32);
  for (; k + 1 < m; k += 2, ++blk) {
    const auto w = Philox4x32::block(
        {static_cast<std::uint32_t>(blk), static_cast<std::uint32_t>(blk >> 32), s0, s1}, key_);
    out[k] = bits_to_uniform((static_cast<std::uint64_t>(w[1]) << 32) | w[0]);
    out[k + 1] = bits_to_uniform((static_cast<std::uint64_t>(w[3]) << 32) | w[2]);
  }
  if (k < m) out[k] = uniform_at(pos + k);
}

void RngStream::fill_normal(std::uint64_t pos, std::span<double> out) const noexcept {
  fill_uniform(pos, out);
  for (double& v : out) v = normal_quantile(v);
}

double RngStream::exponential() noexcept { return -std::log(uniform()); }

}  // namespace sefield
