#pragma once

// Exact arithmetic in GF(p^k).
//
// Elements are held by their canonical rank
//     rank(a) = sum_i coeffs[i] * p^i,   coeffs = coordinates in the
// polynomial basis 1, X, ..., X^{k-1} modulo the field's irreducible
// modulus. Rank order is the canonical element order used for point
// indexing, report output and tie-breaking everywhere downstream.
//
// Multiplication, inversion and powering go through discrete log tables
// over a fixed primitive element, so they are O(1) for any supported
// order (q <= 2^20). Addition works digit-wise in base p.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zarank/errors.hpp"
#include "zarank/rng.hpp"

namespace zarank {

struct FieldElement {
  std::uint32_t r = 0;  // canonical rank in [0, q)
  friend constexpr bool operator==(FieldElement a, FieldElement b) { return a.r == b.r; }
  friend constexpr bool operator!=(FieldElement a, FieldElement b) { return a.r != b.r; }
  friend constexpr bool operator<(FieldElement a, FieldElement b) { return a.r < b.r; }
};

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Coefficient vectors are low-to-high, length k (residues mod p).
inline std::vector<std::uint32_t> rank_to_coeffs(std::uint32_t rank, std::uint32_t p,
                                                 std::uint32_t k) {
  std::vector<std::uint32_t> c(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    c[i] = rank % p;
    rank /= p;
  }
  return c;
}

inline std::uint32_t coeffs_to_rank(std::span<const std::uint32_t> c, std::uint32_t p) {
  std::uint32_t rank = 0;
  for (std::size_t i = c.size(); i-- > 0;) rank = rank * p + c[i];
  return rank;
}

// Remainder of a by b over GF(p); b monic. Vectors low-to-high, b.back()==1.
inline std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> a,
                                           const std::vector<std::uint32_t>& b,
                                           std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i < db; ++i) {
        const std::uint64_t sub = std::uint64_t(lead) * b[i] % p;
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// Product of two length-k coefficient vectors reduced by the monic modulus.
inline std::vector<std::uint32_t> poly_mul_mod(std::span<const std::uint32_t> a,
                                               std::span<const std::uint32_t> b,
                                               const std::vector<std::uint32_t>& modulus,
                                               std::uint32_t p) {
  const std::size_t k = modulus.size() - 1;
  std::vector<std::uint32_t> prod(2 * k - 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
  }
  auto rem = poly_rem(std::move(prod), modulus, p);
  rem.resize(k, 0);
  return rem;
}

// Irreducibility by trial division with every monic polynomial of degree
// <= k/2. Exhaustive and cheap at desk scale.
inline bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  const std::size_t k = poly.size() - 1;
  for (std::size_t m = 1; 2 * m <= k; ++m) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < m; ++i) count *= p;
    for (std::uint64_t r = 0; r < count; ++r) {
      std::vector<std::uint32_t> div =
          rank_to_coeffs(static_cast<std::uint32_t>(r), p, static_cast<std::uint32_t>(m));
      div.push_back(1);
      if (poly_rem(poly, div, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

class FieldContext;
using FieldRef = std::shared_ptr<const FieldContext>;

inline constexpr std::uint64_t kMaxFieldOrder = 1u << 20;

// Deterministic in (p, k, seed): monic degree-k candidates are scanned in
// rank order of their non-leading coefficient vector, starting from a
// seed-derived offset and wrapping around. k = 1 always yields X.
inline std::vector<std::uint32_t> find_irreducible(std::uint32_t p, std::uint32_t k,
                                                   std::uint64_t seed) {
  if (!detail::is_prime_u32(p))
    throw NonPrimeCharacteristic("characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw PreconditionFailed("extension degree must be >= 1");
  if (k == 1) return {0, 1};
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    total *= p;
    if (total > kMaxFieldOrder) throw CapExceeded("field order p^k exceeds the 2^20 cap");
  }
  SplitMix64Rng rng(seed);
  const std::uint64_t offset = rng.next_u64() % total;
  for (std::uint64_t j = 0; j < total; ++j) {
    const std::uint64_t r = (offset + j) % total;
    std::vector<std::uint32_t> cand = detail::rank_to_coeffs(static_cast<std::uint32_t>(r), p, k);
    cand.push_back(1);
    if (detail::is_irreducible(cand, p)) return cand;
  }
  throw Error("Internal", "no irreducible polynomial found");  // unreachable
}

class FieldContext {
public:
  static constexpr std::uint64_t kMaxOrder = kMaxFieldOrder;

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }

  FieldElement element(std::uint64_t rank) const {
    if (rank >= q_) throw IndexOutOfRange("element rank " + std::to_string(rank) +
                                          " out of range for field of order " + std::to_string(q_));
    return {static_cast<std::uint32_t>(rank)};
  }

  std::uint32_t rank(FieldElement a) const { return a.r; }

  std::vector<std::uint32_t> coeffs(FieldElement a) const {
    return detail::rank_to_coeffs(a.r, p_, k_);
  }

  FieldElement from_coeffs(std::span<const std::uint32_t> c) const {
    if (c.size() != k_) throw PreconditionFailed("coefficient vector has wrong length");
    for (auto v : c)
      if (v >= p_) throw PreconditionFailed("coefficient out of range [0, p)");
    return {detail::coeffs_to_rank(c, p_)};
  }

  std::vector<FieldElement> enumerate() const {
    std::vector<FieldElement> out(q_);
    for (std::uint32_t i = 0; i < q_; ++i) out[i] = {i};
    return out;
  }

  FieldElement add(FieldElement a, FieldElement b) const {
    if (k_ == 1) {
      std::uint32_t s = a.r + b.r;
      if (s >= p_) s -= p_;
      return {s};
    }
    std::uint32_t out = 0, mult = 1, x = a.r, y = b.r;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint32_t ds = x % p_ + y % p_;
      if (ds >= p_) ds -= p_;
      out += ds * mult;
      x /= p_;
      y /= p_;
      mult *= p_;
    }
    return {out};
  }

  FieldElement neg(FieldElement a) const {
    if (k_ == 1) return {a.r == 0 ? 0 : p_ - a.r};
    std::uint32_t out = 0, mult = 1, x = a.r;
    for (std::uint32_t i = 0; i < k_; ++i) {
      const std::uint32_t d = x % p_;
      out += (d == 0 ? 0 : p_ - d) * mult;
      x /= p_;
      mult *= p_;
    }
    return {out};
  }

  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a.r == 0 || b.r == 0) return {0};
    return {exp_[std::size_t(log_[a.r]) + log_[b.r]]};
  }

  FieldElement inv(FieldElement a) const {
    if (a.r == 0) throw DivisionByZero("inverse of zero");
    return {exp_[q_ - 1 - log_[a.r]]};
  }

  // 0^0 = 1 by convention (empty products in monomial evaluation).
  FieldElement pow(FieldElement a, std::uint64_t e) const {
    if (a.r == 0) return e == 0 ? one() : zero();
    const std::uint64_t m = q_ - 1;
    const std::uint64_t idx = std::uint64_t(log_[a.r]) * (e % m) % m;
    return {exp_[idx]};
  }

  FieldElement frobenius(FieldElement a) const { return pow(a, p_); }

  // Prime subfield = {c*1 : c in GF(p)}, i.e. ranks below p.
  bool in_prime_subfield(FieldElement a) const { return a.r < p_; }

  bool same_field(const FieldContext& other) const {
    return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
  }

  friend FieldRef make_field(std::uint32_t p, std::uint32_t k,
                             std::optional<std::vector<std::uint32_t>> modulus,
                             std::uint64_t seed);

private:
  FieldContext(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus)
      : p_(p), k_(k), modulus_(std::move(modulus)) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k_; ++i) q *= p_;
    q_ = static_cast<std::uint32_t>(q);
    build_log_tables();
  }

  void build_log_tables() {
    exp_.assign(2 * std::size_t(q_ - 1), 0);
    log_.assign(q_, 0);
    const auto g = find_generator();
    std::vector<std::uint32_t> cur(k_, 0);
    cur[0] = 1;
    std::vector<char> seen(q_, 0);
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      const std::uint32_t r = detail::coeffs_to_rank(cur, p_);
      if (r == 0 || seen[r])
        throw Error("Internal", "log-table fill hit a repeated element");
      seen[r] = 1;
      exp_[i] = r;
      exp_[i + q_ - 1] = r;
      log_[r] = i;
      cur = detail::poly_mul_mod(cur, g, modulus_, p_);
    }
  }

  std::vector<std::uint32_t> pow_coeffs(std::vector<std::uint32_t> base, std::uint64_t e) const {
    std::vector<std::uint32_t> acc(k_, 0);
    acc[0] = 1;
    while (e > 0) {
      if (e & 1) acc = detail::poly_mul_mod(acc, base, modulus_, p_);
      base = detail::poly_mul_mod(base, base, modulus_, p_);
      e >>= 1;
    }
    return acc;
  }

  std::vector<std::uint32_t> find_generator() const {
    std::vector<std::uint32_t> one_c(k_, 0);
    one_c[0] = 1;
    if (q_ == 2) return one_c;
    // Prime factors of the group order.
    std::vector<std::uint32_t> factors;
    std::uint32_t m = q_ - 1;
    for (std::uint32_t d = 2; std::uint64_t(d) * d <= m; ++d) {
      if (m % d == 0) {
        factors.push_back(d);
        while (m % d == 0) m /= d;
      }
    }
    if (m > 1) factors.push_back(m);
    for (std::uint32_t cand = 2; cand < q_; ++cand) {
      const auto c = detail::rank_to_coeffs(cand, p_, k_);
      bool primitive = true;
      for (std::uint32_t f : factors) {
        if (pow_coeffs(c, (q_ - 1) / f) == one_c) {
          primitive = false;
          break;
        }
      }
      if (primitive) return c;
    }
    throw Error("Internal", "no primitive element found");  // unreachable
  }

  std::uint32_t p_, k_, q_ = 0;
  std::vector<std::uint32_t> modulus_;  // k+1 coefficients, low-to-high, monic
  std::vector<std::uint32_t> exp_;      // doubled table of g^i ranks
  std::vector<std::uint32_t> log_;      // discrete logs; log_[0] unused
};

inline FieldRef make_field(std::uint32_t p, std::uint32_t k,
                           std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                           std::uint64_t seed = 0) {
  if (!detail::is_prime_u32(p))
    throw NonPrimeCharacteristic("characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw PreconditionFailed("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxFieldOrder)
      throw CapExceeded("field order p^k exceeds the 2^20 cap");
  }
  std::vector<std::uint32_t> mod;
  if (modulus.has_value()) {
    mod = std::move(*modulus);
    if (mod.size() != std::size_t(k) + 1 || mod.back() != 1)
      throw PreconditionFailed("modulus must be monic of degree exactly k");
    for (auto c : mod)
      if (c >= p) throw PreconditionFailed("modulus coefficient out of range [0, p)");
    if (k == 1) {
      if (mod != std::vector<std::uint32_t>{0, 1})
        throw PreconditionFailed("for k = 1 the modulus must be X");
    } else if (!detail::is_irreducible(mod, p)) {
      throw ReducibleModulus("supplied modulus factors over GF(p)");
    }
  } else {
    mod = find_irreducible(p, k, seed);
  }
  return FieldRef(new FieldContext(p, k, std::move(mod)));
}

}  // namespace zarank
