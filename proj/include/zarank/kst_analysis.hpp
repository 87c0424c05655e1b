#pragma once

// Everything downstream of a built graph: the |N(U)| distribution over
// s-subsets, exact moment machinery (surjection numbers M_r, M = sum M_r,
// the tail bound M / lambda^d), bad-set detection and purging, K_{s,t}
// search, the double-counting star identity, and desk-scale brute-force
// oracles. Monte Carlo verifiers for the vanishing / joint-vanishing /
// moment statements live here too.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "zarank/detail/combinatorics.hpp"
#include "zarank/detail/parallel.hpp"
#include "zarank/errors.hpp"
#include "zarank/graphgen.hpp"
#include "zarank/mpoly.hpp"
#include "zarank/rng.hpp"

namespace zarank {

enum class ScanMode { Exhaustive, Sampled };

inline const char* to_string(ScanMode m) {
  return m == ScanMode::Exhaustive ? "exhaustive" : "sampled";
}

struct ScanOptions {
  ScanMode mode = ScanMode::Exhaustive;
  std::uint64_t samples = 0;  // sampled mode only
  std::uint64_t work_cap = kDefaultWorkCap;
  std::uint32_t workers = 1;
};

using Histogram = std::map<std::uint64_t, std::uint64_t>;

inline std::string histogram_csv(const Histogram& h) {
  std::ostringstream os;
  os << "value,count\n";
  for (const auto& [v, c] : h) os << v << ',' << c << '\n';
  return os.str();
}

// --- exact moment machinery ------------------------------------------------

// M_r = number of surjections from a d-element set onto an r-element set,
// by inclusion-exclusion: sum_i (-1)^i C(r,i) (r-i)^d.
inline BigInt surjection_count(std::uint32_t d, std::uint32_t r) {
  if (r > d) throw PreconditionFailed("surjection_count needs r <= d");
  if (d > 30) throw Overflow("surjection_count capped at d <= 30");
  BigInt total = 0;
  for (std::uint32_t i = 0; i <= r; ++i) {
    BigInt term = detail::binomial_big(r, i);
    BigInt p = 1;
    for (std::uint32_t j = 0; j < d; ++j) p *= r - i;
    term *= p;
    total += (i % 2 == 0) ? term : -term;
  }
  return total;
}

inline BigInt moment_bound(std::uint32_t d) {
  if (d > 30) throw Overflow("moment_bound capped at d <= 30");
  BigInt m = 0;
  for (std::uint32_t r = 0; r <= d; ++r) m += surjection_count(d, r);
  return m;
}

// M / lambda^d; may exceed 1, callers clamp for display.
inline double tail_bound(double lambda, std::uint32_t d) {
  if (!(lambda > 0)) throw PreconditionFailed("tail_bound needs lambda > 0");
  return static_cast<double>(moment_bound(d)) / std::pow(lambda, double(d));
}

// 2 C(n,s) M / (q/2)^d, evaluated in exact rational arithmetic. The
// pipeline passes n = q^s; the formula itself accepts any n.
inline double expected_bad_bound(std::uint64_t n, std::uint32_t s, std::uint32_t q,
                                 std::uint32_t d) {
  BigInt qd = 1, two_d = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    qd *= q;
    two_d *= 2;
  }
  const BigRational r(BigInt(2) * detail::binomial_big(n, s) * moment_bound(d) * two_d, qd);
  return static_cast<double>(r);
}

// Kovari--Sos--Turan ceiling 2 (t-1)^{1/s} n^{2-1/s}; an asymptotic bound,
// used for report context and as a dominance check over the exact oracle.
inline double kst_upper_bound(std::uint64_t n, std::uint32_t s, std::uint32_t t) {
  if (t < 2 || s < 1) throw PreconditionFailed("kst_upper_bound needs s >= 1, t >= 2");
  return 2.0 * std::pow(double(t - 1), 1.0 / s) * std::pow(double(n), 2.0 - 1.0 / s);
}

// --- |N(U)| distribution ---------------------------------------------------

struct NeighborhoodReport {
  Side side = Side::Left;
  std::uint32_t s = 0;
  ScanMode mode = ScanMode::Exhaustive;
  std::uint64_t subsets = 0;  // C(n,s) or the sample count
  Histogram histogram;
  std::uint64_t max_value = 0;
  std::uint32_t d = 0;
  double empirical_moment_d = 0.0;
  double moment_bound_M = 0.0;
};

namespace detail {

// AND the adjacency bitsets of `ids` into scratch, return the popcount.
inline std::uint64_t subset_common_count(const BipartiteGraph& g,
                                         std::span<const std::uint32_t> ids, Side side,
                                         std::vector<std::uint64_t>& scratch) {
  auto fetch = [&](std::uint32_t v) { return side == Side::Left ? g.row(v) : g.col(v); };
  const auto first = fetch(ids[0]);
  scratch.assign(first.begin(), first.end());
  for (std::size_t t = 1; t < ids.size(); ++t) {
    const auto r = fetch(ids[t]);
    for (std::size_t w = 0; w < scratch.size(); ++w) scratch[w] &= r[w];
  }
  return BipartiteGraph::popcount_words(scratch);
}

// Visit every s-subset of [0, n) in lexicographic order, chunked across
// workers; visit(chunk, ids, count) must use chunk-local state.
template <class Visit>
void scan_subsets(const BipartiteGraph& g, std::uint32_t s, Side side, std::uint64_t work_cap,
                  std::uint32_t workers, Visit&& visit) {
  const std::uint32_t n = side == Side::Left ? g.n_left() : g.n_right();
  if (s < 1 || s > n) throw PreconditionFailed("subset size must satisfy 1 <= s <= n");
  const std::uint64_t total = detail::binomial_u64_sat(n, s);
  if (total > work_cap) throw CapExceeded("C(n,s) subsets exceed the work cap");
  parallel_chunks(total, workers, [&](std::uint32_t chunk, std::uint64_t b, std::uint64_t e) {
    std::vector<std::uint32_t> ids = detail::unrank_combination(n, s, b);
    std::vector<std::uint64_t> scratch;
    for (std::uint64_t r = b; r < e; ++r) {
      visit(chunk, ids, subset_common_count(g, ids, side, scratch));
      if (r + 1 < e) detail::next_combination(ids, n);
    }
  });
}

}  // namespace detail

// Sampled mode draws uniform s-subsets by rejection: s ids uniform in
// [0, n); the tuple is accepted iff strictly increasing (s draws per
// attempt, repeated until accepted).
template <class Rng>
NeighborhoodReport neighborhood_distribution(const BipartiteGraph& g, std::uint32_t s, Side side,
                                             std::uint32_t d, const ScanOptions& opt, Rng& rng) {
  NeighborhoodReport rep;
  rep.side = side;
  rep.s = s;
  rep.mode = opt.mode;
  rep.d = d;
  rep.moment_bound_M = static_cast<double>(moment_bound(d));

  if (opt.mode == ScanMode::Exhaustive) {
    std::vector<Histogram> partial(std::max<std::uint32_t>(opt.workers, 1));
    detail::scan_subsets(g, s, side, opt.work_cap, opt.workers,
                         [&](std::uint32_t chunk, const std::vector<std::uint32_t>&,
                             std::uint64_t count) { ++partial[chunk][count]; });
    for (const auto& h : partial)
      for (const auto& [v, c] : h) rep.histogram[v] += c;
  } else {
    const std::uint32_t n = side == Side::Left ? g.n_left() : g.n_right();
    if (s < 1 || s > n) throw PreconditionFailed("subset size must satisfy 1 <= s <= n");
    std::vector<std::uint32_t> ids(s);
    std::vector<std::uint64_t> scratch;
    for (std::uint64_t t = 0; t < opt.samples; ++t) {
      for (;;) {
        bool ok = true;
        for (std::uint32_t i = 0; i < s; ++i) ids[i] = static_cast<std::uint32_t>(uniform_below(rng, n));
        for (std::uint32_t i = 0; i + 1 < s; ++i)
          if (ids[i] >= ids[i + 1]) { ok = false; break; }
        if (ok) break;
      }
      ++rep.histogram[detail::subset_common_count(g, ids, side, scratch)];
    }
  }
  double total = 0, moment = 0;
  for (const auto& [v, c] : rep.histogram) {
    total += double(c);
    moment += double(c) * std::pow(double(v), double(d));
    rep.max_value = std::max(rep.max_value, v);
  }
  rep.subsets = static_cast<std::uint64_t>(total);
  rep.empirical_moment_d = total > 0 ? moment / total : 0.0;
  return rep;
}

// --- bad sets and purging --------------------------------------------------

struct BadSetEntry {
  Side side;
  std::vector<std::uint32_t> ids;  // ascending
  std::uint64_t n_common;
};

struct BadSetReport {
  std::uint64_t threshold = 0;
  std::uint32_t s = 0;
  ScanMode mode = ScanMode::Exhaustive;
  std::vector<BadSetEntry> sets;  // left side first, then lexicographic ids
  std::string graph_digest;
  std::uint64_t count() const { return sets.size(); }
};

// Lists every s-subset (both sides) whose common neighborhood exceeds C.
inline BadSetReport find_bad_sets(const BipartiteGraph& g, std::uint32_t s, std::uint64_t C,
                                  const ScanOptions& opt) {
  if (opt.mode != ScanMode::Exhaustive)
    throw PreconditionFailed("bad-set listing is exhaustive only");
  BadSetReport rep;
  rep.threshold = C;
  rep.s = s;
  rep.mode = ScanMode::Exhaustive;
  rep.graph_digest = g.digest();
  for (Side side : {Side::Left, Side::Right}) {
    std::vector<std::vector<BadSetEntry>> partial(std::max<std::uint32_t>(opt.workers, 1));
    detail::scan_subsets(g, s, side, opt.work_cap, opt.workers,
                         [&](std::uint32_t chunk, const std::vector<std::uint32_t>& ids,
                             std::uint64_t count) {
                           if (count > C) partial[chunk].push_back({side, ids, count});
                         });
    for (auto& p : partial)
      for (auto& e : p) rep.sets.push_back(std::move(e));
  }
  return rep;
}

struct PurgeResult {
  BipartiteGraph graph;
  std::vector<std::uint32_t> removed_left, removed_right;
  std::uint64_t edges_before = 0, edges_after = 0;
  std::uint64_t removed_count() const { return removed_left.size() + removed_right.size(); }
};

// Removes, for each listed bad set in report order, its smallest-index
// vertex; a set containing an already-removed vertex is covered and
// skipped. Removal clears incident edges (the vertex id stays valid).
inline PurgeResult purge_bad_sets(const BipartiteGraph& g, const BadSetReport& report) {
  if (report.mode != ScanMode::Exhaustive)
    throw StaleReport("purge requires an exhaustive bad-set report");
  if (report.graph_digest != g.digest())
    throw StaleReport("bad-set report does not match this graph");
  PurgeResult res{g, {}, {}, g.edge_count(), 0};
  std::vector<char> gone_left(g.n_left(), 0), gone_right(g.n_right(), 0);
  for (const auto& e : report.sets) {
    auto& gone = e.side == Side::Left ? gone_left : gone_right;
    bool covered = false;
    for (auto v : e.ids)
      if (gone[v]) { covered = true; break; }
    if (covered) continue;
    const std::uint32_t victim = e.ids.front();
    gone[victim] = 1;
    res.graph.clear_vertex(victim, e.side);
    (e.side == Side::Left ? res.removed_left : res.removed_right).push_back(victim);
  }
  res.edges_after = res.graph.edge_count();
  return res;
}

// --- K_{s,t} search ----------------------------------------------------------

struct KstWitness {
  std::vector<std::uint32_t> left_ids, right_ids;
};

// For a bipartite host, K_{s,t} is present iff some same-side s-subset has
// at least t common neighbors; both sides are scanned, left first, subsets
// in lexicographic order, so the witness is deterministic. The witness is
// re-verified pairwise before it is returned.
inline std::optional<KstWitness> contains_kst(const BipartiteGraph& g, std::uint32_t s,
                                              std::uint32_t t,
                                              std::uint64_t work_cap = kDefaultWorkCap) {
  if (s < 1 || t < 1) throw PreconditionFailed("contains_kst needs s, t >= 1");
  for (Side side : {Side::Left, Side::Right}) {
    const std::uint32_t n = side == Side::Left ? g.n_left() : g.n_right();
    if (s > n) continue;
    if (detail::binomial_u64_sat(n, s) > work_cap)
      throw CapExceeded("C(n,s) subsets exceed the work cap");
    std::vector<std::uint32_t> ids(s);
    for (std::uint32_t i = 0; i < s; ++i) ids[i] = i;
    std::vector<std::uint64_t> scratch;
    do {
      if (detail::subset_common_count(g, ids, side, scratch) < t) continue;
      std::vector<std::uint32_t> commons;
      for (std::size_t w = 0; w < scratch.size() && commons.size() < t; ++w) {
        std::uint64_t bits = scratch[w];
        while (bits && commons.size() < t) {
          commons.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits)));
          bits &= bits - 1;
        }
      }
      KstWitness wit;
      wit.left_ids = side == Side::Left ? ids : commons;
      wit.right_ids = side == Side::Left ? commons : ids;
      for (auto i : wit.left_ids)
        for (auto j : wit.right_ids)
          if (!g.edge(i, j)) throw Error("Internal", "witness failed the pairwise edge check");
      return wit;
    } while (detail::next_combination(ids, n));
  }
  return std::nullopt;
}

// --- star counting -----------------------------------------------------------

struct StarCount {
  BigInt total;                    // number of K_{1,s} with apex on the left
  std::vector<BigInt> per_vertex;  // C(deg(v), s) per left vertex
};

// N = sum over left vertices of C(deg(v), s): apex on the left, leaves on
// the right.
inline StarCount star_count_identity(const BipartiteGraph& g, std::uint32_t s) {
  StarCount out;
  out.total = 0;
  out.per_vertex.reserve(g.n_left());
  for (std::uint32_t v = 0; v < g.n_left(); ++v) {
    out.per_vertex.push_back(detail::binomial_big(g.degree(v, Side::Left), s));
    out.total += out.per_vertex.back();
  }
  return out;
}

// In a K_{s,t}-free host the star count is at most (t-1) C(n,s).
inline BigInt star_count_bound(std::uint64_t n, std::uint32_t s, std::uint32_t t) {
  return BigInt(t - 1) * detail::binomial_big(n, s);
}

// --- brute-force Turan oracle ------------------------------------------------

// Exact max edge count of an n-vertex simple graph with no K_{s,t}
// subgraph (parts on any disjoint vertex sets). Edge-mask enumeration with
// a popcount prune; correctness first, n is capped at 8.
inline std::uint64_t brute_force_ex(std::uint32_t n, std::uint32_t s, std::uint32_t t) {
  if (s < 1 || t < 1) throw PreconditionFailed("brute_force_ex needs s, t >= 1");
  if (n > 8) throw CapExceeded("brute_force_ex capped at n <= 8");
  if (n < 2) return 0;
  // a copy of K_{s,t} always exposes its smaller part, so scanning
  // min(s,t)-subsets against the larger threshold is exact
  const std::uint32_t a = std::min(s, t), b = std::max(s, t);
  const std::uint32_t m = n * (n - 1) / 2;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) edges.push_back({u, v});

  std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> subsets;  // (mask, ids)
  if (a <= n) {
    std::vector<std::uint32_t> ids(a);
    for (std::uint32_t i = 0; i < a; ++i) ids[i] = i;
    do {
      std::uint32_t mask = 0;
      for (auto v : ids) mask |= 1u << v;
      subsets.push_back({mask, ids});
    } while (detail::next_combination(ids, n));
  }

  std::uint64_t best = 0;
  std::vector<std::uint32_t> adj(n);
  for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
    const auto edge_cnt = static_cast<std::uint64_t>(std::popcount(mask));
    if (edge_cnt <= best) continue;
    std::fill(adj.begin(), adj.end(), 0);
    for (std::uint32_t e = 0; e < m; ++e) {
      if ((mask >> e) & 1) {
        adj[edges[e].first] |= 1u << edges[e].second;
        adj[edges[e].second] |= 1u << edges[e].first;
      }
    }
    bool free = true;
    for (const auto& [smask, ids] : subsets) {
      std::uint32_t common = ~0u;
      for (auto v : ids) common &= adj[v];
      common &= ~smask;
      if (static_cast<std::uint32_t>(std::popcount(common)) >= b) {
        free = false;
        break;
      }
    }
    if (free) best = edge_cnt;
  }
  return best;
}

// --- Monte Carlo verifiers -----------------------------------------------------

struct McCheck {
  std::string name;
  std::uint64_t trials = 0;
  double empirical = 0, expected = 0, sigma = 0, z = 0;
  bool skipped = false;
  std::string note;
};

namespace detail {

// Per-pair weight vector w[i] = (x-monomial at u) * (y-monomial at v), so
// f(u,v) = <dense coefficients, w>. Shared by the vanishing verifiers.
inline std::vector<FieldElement> pair_weights(const FieldContext& f, const MonomialBasis& basis,
                                              const PointVec& u, const PointVec& v) {
  const std::vector<PointVec> upts{u}, vpts{v};
  const BlockEvalTable xs(f, basis.block(), upts), ys(f, basis.block(), vpts);
  std::vector<FieldElement> w(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    w[i] = f.mul(xs.row(0)[i / basis.block_size()], ys.row(0)[i % basis.block_size()]);
  return w;
}

inline McCheck finish_frequency_check(std::string name, std::uint64_t trials, std::uint64_t hits,
                                      double expected) {
  McCheck c;
  c.name = std::move(name);
  c.trials = trials;
  c.empirical = trials ? double(hits) / double(trials) : 0.0;
  c.expected = expected;
  c.sigma = trials ? std::sqrt(expected * (1 - expected) / double(trials)) : 0.0;
  c.z = c.sigma > 0 ? (c.empirical - c.expected) / c.sigma : 0.0;
  return c;
}

}  // namespace detail

// Frequency of f(u,v) = 0 over uniform f; expected 1/q. Consumes exactly
// basis.size() field draws per trial, in basis order (the same stream a
// sample_uniform call would consume).
template <class Rng>
McCheck monte_carlo_vanishing(FieldRef ctx, std::uint32_t s, std::uint32_t d,
                              DegreeConvention conv, const PointVec& u, const PointVec& v,
                              std::uint64_t trials, Rng& rng) {
  const MonomialBasis basis(s, d, conv);
  const auto w = detail::pair_weights(*ctx, basis, u, v);
  std::vector<FieldElement> coeffs;
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    sample_dense_ranks(*ctx, basis.size(), rng, coeffs);
    if (dot_dense(*ctx, coeffs, w) == ctx->zero()) ++hits;
  }
  return detail::finish_frequency_check("vanishing", trials, hits, 1.0 / ctx->q());
}

// Frequency of f vanishing on all of U x V; expected q^{-|U||V|}.
template <class Rng>
McCheck monte_carlo_joint_vanishing(FieldRef ctx, std::uint32_t s, std::uint32_t d,
                                    DegreeConvention conv, std::span<const PointVec> U,
                                    std::span<const PointVec> V, std::uint64_t trials, Rng& rng) {
  const MonomialBasis basis(s, d, conv);
  std::vector<std::vector<FieldElement>> weights;
  for (const auto& u : U)
    for (const auto& v : V) weights.push_back(detail::pair_weights(*ctx, basis, u, v));
  const double expected = std::pow(1.0 / ctx->q(), double(U.size() * V.size()));
  std::vector<FieldElement> coeffs;
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    sample_dense_ranks(*ctx, basis.size(), rng, coeffs);
    bool all = true;
    for (const auto& w : weights) {
      if (dot_dense(*ctx, coeffs, w) != ctx->zero()) {
        all = false;
        break;
      }
    }
    if (all) ++hits;
  }
  auto c = detail::finish_frequency_check("joint-vanishing", trials, hits, expected);
  std::ostringstream note;
  note << "|U|=" << U.size() << " |V|=" << V.size();
  c.note = note.str();
  return c;
}

struct MomentStats {
  std::uint64_t trials = 0;
  std::uint32_t d = 0;
  Histogram histogram;  // |N(U)| over sampled polynomials
  double empirical_moment = 0.0;
  double bound_M = 0.0;

  double tail_frequency(std::uint64_t lambda) const {
    std::uint64_t hits = 0, total = 0;
    for (const auto& [v, c] : histogram) {
      total += c;
      if (v >= lambda) hits += c;
    }
    return total ? double(hits) / double(total) : 0.0;
  }
};

// Distribution of |N(U)| for a fixed U over freshly sampled polynomials;
// feeds the moment and tail checks. One basis-worth of field draws per
// trial.
template <class Rng>
MomentStats monte_carlo_neighborhood_moment(FieldRef ctx, std::uint32_t s, std::uint32_t d,
                                            DegreeConvention conv, std::span<const PointVec> U,
                                            std::uint64_t trials, Rng& rng,
                                            std::uint64_t work_cap = kDefaultWorkCap) {
  const MonomialBasis basis(s, d, conv);
  const auto pts = enumerate_points(*ctx, s);
  if (pts.size() * U.size() > work_cap) throw CapExceeded("moment scan exceeds the work cap");
  const BlockEvalTable table(*ctx, basis.block(), pts);
  std::vector<PointVec> upts(U.begin(), U.end());
  const BlockEvalTable utable(*ctx, basis.block(), upts);

  MomentStats stats;
  stats.trials = trials;
  stats.d = d;
  stats.bound_M = static_cast<double>(moment_bound(d));
  std::vector<FieldElement> coeffs;
  std::vector<std::vector<FieldElement>> rowcoef(U.size(),
                                                 std::vector<FieldElement>(basis.block_size()));
  for (std::uint64_t t = 0; t < trials; ++t) {
    sample_dense_ranks(*ctx, basis.size(), rng, coeffs);
    for (std::size_t i = 0; i < U.size(); ++i)
      restrict_dense(*ctx, coeffs, utable.row(i), rowcoef[i]);
    std::uint64_t count = 0;
    for (std::size_t y = 0; y < pts.size(); ++y) {
      bool all = true;
      for (std::size_t i = 0; i < U.size(); ++i) {
        if (dot_dense(*ctx, rowcoef[i], table.row(y)) != ctx->zero()) {
          all = false;
          break;
        }
      }
      if (all) ++count;
    }
    ++stats.histogram[count];
  }
  double total = 0, moment = 0;
  for (const auto& [v, c] : stats.histogram) {
    total += double(c);
    moment += double(c) * std::pow(double(v), double(d));
  }
  stats.empirical_moment = total > 0 ? moment / total : 0.0;
  return stats;
}

}  // namespace zarank
