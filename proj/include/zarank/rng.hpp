#pragma once

#include <cstdint>

namespace zarank {

// Counter-based deterministic generator (splitmix64 stream function).
//
// The n-th output is mix64(seed + n*GOLDEN), so the stream is a pure
// function of (seed, counter). Substreams for independent trials are
// derived from (seed, index) without touching the parent counter; every
// sampling routine in the library documents exactly how many field draws
// it consumes from its stream, in a pinned order, so experiments
// reproduce bit-for-bit across runs and platforms.
class SplitMix64Rng {
public:
  explicit SplitMix64Rng(std::uint64_t seed) : seed_(seed) {}

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t next_u64() {
    ++counter_;
    return mix64(seed_ + counter_ * kGolden);
  }

  // Child stream number `index`; independent of this stream's position.
  SplitMix64Rng substream(std::uint64_t index) const {
    return SplitMix64Rng(mix64(seed_ ^ 0x5851F42D4C957F2DULL) ^
                         mix64(index * kGolden + 0x14057B7EF767814FULL));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Unbiased uniform draw from [0, m) by rejection. m >= 1.
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t m) {
  const std::uint64_t rem = (UINT64_MAX % m + 1) % m;  // 2^64 mod m
  for (;;) {
    const std::uint64_t x = rng.next_u64();
    if (rem == 0 || x <= UINT64_MAX - rem) return x % m;
  }
}

// One draw per call even for p <= 0 or p >= 1, so streams stay aligned
// when parameters change.
template <class Rng>
bool bernoulli(Rng& rng, double p) {
  const std::uint64_t u53 = rng.next_u64() >> 11;
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return static_cast<double>(u53) < p * 9007199254740992.0;  // p * 2^53
}

}  // namespace zarank
