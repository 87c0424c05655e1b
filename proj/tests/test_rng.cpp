#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "zarank/rng.hpp"

using zarank::SplitMix64Rng;

TEST_CASE("identical seeds give identical streams") {
  SplitMix64Rng a(12345), b(12345);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge") {
  SplitMix64Rng a(1), b(2);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += a.next_u64() == b.next_u64();
  REQUIRE(same == 0);
}

TEST_CASE("substreams depend only on (seed, index)") {
  SplitMix64Rng a(7), b(7);
  a.next_u64();  // advancing the parent must not shift child streams
  a.next_u64();
  auto ca = a.substream(3);
  auto cb = b.substream(3);
  for (int i = 0; i < 16; ++i) REQUIRE(ca.next_u64() == cb.next_u64());
  auto c0 = b.substream(0);
  REQUIRE(c0.next_u64() != b.substream(1).next_u64());
}

TEST_CASE("uniform_below stays in range and covers all residues") {
  SplitMix64Rng rng(99);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto x = zarank::uniform_below(rng, 7);
    REQUIRE(x < 7);
    ++counts[x];
  }
  for (int c : counts) {
    // mean 1000, sd ~29; 6 sigma window
    REQUIRE(c > 820);
    REQUIRE(c < 1180);
  }
}

TEST_CASE("bernoulli consumes one draw regardless of p") {
  SplitMix64Rng a(5), b(5);
  (void)zarank::bernoulli(a, 1.0);
  (void)zarank::bernoulli(b, 0.5);
  REQUIRE(a.counter() == 1);
  REQUIRE(a.next_u64() == b.next_u64());
  SplitMix64Rng c(5);
  REQUIRE(zarank::bernoulli(c, 1.0));
  SplitMix64Rng d(5);
  REQUIRE_FALSE(zarank::bernoulli(d, 0.0));
}

TEST_CASE("bernoulli frequency tracks p") {
  SplitMix64Rng rng(2024);
  const double p = 0.125;
  const int trials = 40000;
  int hits = 0;
  for (int i = 0; i < trials; ++i) hits += zarank::bernoulli(rng, p);
  const double freq = double(hits) / trials;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  REQUIRE(std::abs(freq - p) < 5 * sigma);
}
