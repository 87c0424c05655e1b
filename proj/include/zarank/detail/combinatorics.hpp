#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zarank/errors.hpp"

namespace zarank {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

namespace detail {

inline BigInt binomial_big(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Saturates at UINT64_MAX; enough for comparisons against work caps.
inline std::uint64_t binomial_u64_sat(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: this is C(n-k+i, i)
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

// Lexicographically next k-subset of [0, n), ascending ids. Returns false
// after the last one.
inline bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i-- > 0) {
    if (c[i] < n - (k - i)) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Subset at `rank` in the lexicographic order over sorted tuples; used to
// split exhaustive scans into worker chunks.
inline std::vector<std::uint32_t> unrank_combination(std::uint32_t n, std::uint32_t k,
                                                     std::uint64_t rank) {
  std::vector<std::uint32_t> c(k);
  std::uint32_t start = 0;
  for (std::uint32_t pos = 0; pos < k; ++pos) {
    for (std::uint32_t v = start;; ++v) {
      const std::uint64_t cnt = binomial_u64_sat(n - 1 - v, k - 1 - pos);
      if (rank < cnt) {
        c[pos] = v;
        start = v + 1;
        break;
      }
      rank -= cnt;
    }
  }
  return c;
}

}  // namespace detail
}  // namespace zarank
