#pragma once

// Bipartite graphs on L = R = F_q^s indexed by the canonical point order
//     index(pt) = sum_j rank(coords[j]) * q^j   (coordinate 0 least
// significant), built either from a polynomial (edge iff f(x,y) = 0) or
// from independent coin flips. Adjacency is stored as per-left-vertex
// bitsets plus the transpose, so subset scans intersect fast on both
// sides.

#include <bit>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "zarank/detail/parallel.hpp"
#include "zarank/detail/sha256.hpp"
#include "zarank/errors.hpp"
#include "zarank/ffield.hpp"
#include "zarank/mpoly.hpp"
#include "zarank/rng.hpp"

namespace zarank {

inline constexpr std::uint64_t kDefaultWorkCap = 1ull << 26;
inline constexpr std::uint64_t kMaxPartSize = 1ull << 22;

enum class Side { Left, Right };

inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

struct VertexRef {
  Side side;
  std::uint32_t id;
};

inline std::uint64_t point_to_index(const FieldContext& f, std::span<const FieldElement> pt) {
  std::uint64_t idx = 0, mult = 1;
  for (std::size_t j = 0; j < pt.size(); ++j) {
    idx += std::uint64_t(pt[j].r) * mult;
    mult *= f.q();
  }
  return idx;
}

inline PointVec index_to_point(const FieldContext& f, std::uint32_t s, std::uint64_t idx) {
  std::uint64_t total = 1;
  for (std::uint32_t j = 0; j < s; ++j) total *= f.q();
  if (idx >= total) throw IndexOutOfRange("point index out of range");
  PointVec pt(s);
  for (std::uint32_t j = 0; j < s; ++j) {
    pt[j] = {static_cast<std::uint32_t>(idx % f.q())};
    idx /= f.q();
  }
  return pt;
}

inline std::vector<PointVec> enumerate_points(const FieldContext& f, std::uint32_t s) {
  std::uint64_t total = 1;
  for (std::uint32_t j = 0; j < s; ++j) {
    total *= f.q();
    if (total > kMaxPartSize) throw CapExceeded("q^s exceeds the part-size cap");
  }
  std::vector<PointVec> pts;
  pts.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) pts.push_back(index_to_point(f, s, i));
  return pts;
}

struct GraphProvenance {
  std::string kind = "manual";  // algebraic | random | manual
  std::uint32_t p = 0, k = 0, s = 0, d = 0;
  std::uint64_t seed = 0;
  std::string convention;
  std::string poly_digest;
  double edge_prob = 0.0;
};

class BipartiteGraph {
public:
  BipartiteGraph(std::uint32_t n_left, std::uint32_t n_right)
      : n_left_(n_left),
        n_right_(n_right),
        row_words_((n_right + 63) / 64),
        col_words_((n_left + 63) / 64),
        rows_(std::size_t(n_left) * row_words_, 0),
        cols_(std::size_t(n_right) * col_words_, 0) {}

  std::uint32_t n_left() const { return n_left_; }
  std::uint32_t n_right() const { return n_right_; }
  std::size_t row_words() const { return row_words_; }
  std::size_t col_words() const { return col_words_; }

  std::span<const std::uint64_t> row(std::uint32_t i) const {
    return {rows_.data() + std::size_t(i) * row_words_, row_words_};
  }
  std::span<const std::uint64_t> col(std::uint32_t j) const {
    return {cols_.data() + std::size_t(j) * col_words_, col_words_};
  }
  // build phase: workers may fill disjoint rows concurrently
  std::span<std::uint64_t> mutable_row(std::uint32_t i) {
    return {rows_.data() + std::size_t(i) * row_words_, row_words_};
  }

  void set_edge(std::uint32_t i, std::uint32_t j) {
    check_ids(i, j);
    rows_[std::size_t(i) * row_words_ + j / 64] |= 1ull << (j % 64);
  }

  bool edge(std::uint32_t i, std::uint32_t j) const {
    check_ids(i, j);
    return (rows_[std::size_t(i) * row_words_ + j / 64] >> (j % 64)) & 1;
  }

  // Rebuilds the transpose and the edge count from the rows.
  void finalize() {
    std::fill(cols_.begin(), cols_.end(), 0);
    edge_count_ = 0;
    for (std::uint32_t i = 0; i < n_left_; ++i) {
      const auto r = row(i);
      for (std::size_t w = 0; w < row_words_; ++w) {
        std::uint64_t bits = r[w];
        edge_count_ += std::popcount(bits);
        while (bits) {
          const std::uint32_t j = static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits));
          cols_[std::size_t(j) * col_words_ + i / 64] |= 1ull << (i % 64);
          bits &= bits - 1;
        }
      }
    }
  }

  std::uint64_t edge_count() const { return edge_count_; }

  std::uint32_t degree(std::uint32_t v, Side side) const {
    if (side == Side::Left) {
      if (v >= n_left_) throw IndexOutOfRange("left vertex out of range");
      return static_cast<std::uint32_t>(popcount_words(row(v)));
    }
    if (v >= n_right_) throw IndexOutOfRange("right vertex out of range");
    return static_cast<std::uint32_t>(popcount_words(col(v)));
  }

  static std::uint64_t popcount_words(std::span<const std::uint64_t> words) {
    std::uint64_t c = 0;
    for (auto w : words) c += std::popcount(w);
    return c;
  }

  // Intersection of the adjacency bitsets of U (all on `side`); the result
  // is a bitset over the opposite side.
  std::vector<std::uint64_t> common_neighborhood(std::span<const std::uint32_t> ids,
                                                 Side side) const {
    if (ids.empty()) throw PreconditionFailed("common neighborhood of an empty set");
    const std::uint32_t limit = side == Side::Left ? n_left_ : n_right_;
    for (auto v : ids)
      if (v >= limit) throw IndexOutOfRange("vertex id out of range");
    auto fetch = [&](std::uint32_t v) { return side == Side::Left ? row(v) : col(v); };
    std::vector<std::uint64_t> acc(fetch(ids[0]).begin(), fetch(ids[0]).end());
    for (std::size_t t = 1; t < ids.size(); ++t) {
      const auto r = fetch(ids[t]);
      for (std::size_t w = 0; w < acc.size(); ++w) acc[w] &= r[w];
    }
    return acc;
  }

  // Same, with per-vertex side tags; a set spanning both parts is a caller
  // bug and is rejected rather than answered with the empty set.
  std::vector<std::uint64_t> common_neighborhood(std::span<const VertexRef> refs) const {
    if (refs.empty()) throw PreconditionFailed("common neighborhood of an empty set");
    std::vector<std::uint32_t> ids;
    ids.reserve(refs.size());
    for (const auto& r : refs) {
      if (r.side != refs[0].side)
        throw MixedSides("vertex set spans both parts of the bipartite graph");
      ids.push_back(r.id);
    }
    return common_neighborhood(ids, refs[0].side);
  }

  // Purge support: drops every edge at v, keeping rows and columns in sync.
  void clear_vertex(std::uint32_t v, Side side) {
    if (side == Side::Left) {
      if (v >= n_left_) throw IndexOutOfRange("left vertex out of range");
      auto r = mutable_row(v);
      edge_count_ -= popcount_words(r);
      for (std::size_t w = 0; w < row_words_; ++w) {
        std::uint64_t bits = r[w];
        while (bits) {
          const std::uint32_t j = static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits));
          cols_[std::size_t(j) * col_words_ + v / 64] &= ~(1ull << (v % 64));
          bits &= bits - 1;
        }
        r[w] = 0;
      }
    } else {
      if (v >= n_right_) throw IndexOutOfRange("right vertex out of range");
      auto c = cols_.begin() + std::size_t(v) * col_words_;
      for (std::size_t w = 0; w < col_words_; ++w) {
        std::uint64_t bits = c[w];
        while (bits) {
          const std::uint32_t i = static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits));
          rows_[std::size_t(i) * row_words_ + v / 64] &= ~(1ull << (v % 64));
          --edge_count_;
          bits &= bits - 1;
        }
        c[w] = 0;
      }
    }
  }

  // Header "# bipartite n_left n_right", one "i j" line per edge, sorted.
  std::string export_edge_list() const {
    std::ostringstream os;
    os << "# bipartite " << n_left_ << ' ' << n_right_ << '\n';
    for (std::uint32_t i = 0; i < n_left_; ++i) {
      const auto r = row(i);
      for (std::size_t w = 0; w < row_words_; ++w) {
        std::uint64_t bits = r[w];
        while (bits) {
          os << i << ' ' << (w * 64 + std::countr_zero(bits)) << '\n';
          bits &= bits - 1;
        }
      }
    }
    return os.str();
  }

  std::string digest() const { return detail::sha256_hex(export_edge_list()); }

  GraphProvenance& provenance() { return prov_; }
  const GraphProvenance& provenance() const { return prov_; }

private:
  void check_ids(std::uint32_t i, std::uint32_t j) const {
    if (i >= n_left_ || j >= n_right_) throw IndexOutOfRange("edge endpoint out of range");
  }

  std::uint32_t n_left_, n_right_;
  std::size_t row_words_, col_words_;
  std::vector<std::uint64_t> rows_, cols_;
  std::uint64_t edge_count_ = 0;
  GraphProvenance prov_;
};

struct ConstructionParams {
  std::uint32_t p = 0;
  std::uint32_t k = 1;
  std::uint32_t s = 2;
  std::optional<std::uint32_t> d;  // default s^2 - s + 2
  std::uint64_t seed = 0;
  DegreeConvention convention = DegreeConvention::BlockTotal;
  std::uint64_t work_cap = kDefaultWorkCap;
  std::uint32_t workers = 1;

  std::uint32_t effective_d() const { return d.value_or(s * s - s + 2); }
};

// Materializes the full q^s x q^s evaluation grid of f; rows are filled in
// parallel after f is fixed, so the result is independent of worker count.
inline BipartiteGraph graph_from_poly(const BiPoly& f, std::uint64_t work_cap = kDefaultWorkCap,
                                      std::uint32_t workers = 1) {
  const auto& ctx = f.ctx();
  std::uint64_t n = 1;
  for (std::uint32_t j = 0; j < f.s(); ++j) {
    n *= ctx.q();
    if (n > kMaxPartSize) throw CapExceeded("q^s exceeds the part-size cap");
  }
  if (n * n > work_cap)
    throw CapExceeded("q^(2s) pair evaluations exceed the work cap of " +
                      std::to_string(work_cap));
  const auto pts = enumerate_points(ctx, f.s());
  const MonomialBasis basis(f.s(), f.degree_bound(), f.convention());
  const auto dense = dense_coeffs(f, basis);
  const BlockEvalTable table(ctx, basis.block(), pts);

  BipartiteGraph g(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n));
  detail::parallel_chunks(n, workers, [&](std::uint32_t, std::uint64_t b, std::uint64_t e) {
    std::vector<FieldElement> rowcoef(basis.block_size());
    for (std::uint64_t i = b; i < e; ++i) {
      restrict_dense(ctx, dense, table.row(i), rowcoef);
      auto bits = g.mutable_row(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = 0; j < n; ++j) {
        if (dot_dense(ctx, rowcoef, table.row(j)) == ctx.zero())
          bits[j / 64] |= 1ull << (j % 64);
      }
    }
  });
  g.finalize();
  g.provenance().kind = "algebraic";
  g.provenance().p = ctx.p();
  g.provenance().k = ctx.k();
  g.provenance().s = f.s();
  g.provenance().d = f.degree_bound();
  g.provenance().convention = to_string(f.convention());
  g.provenance().poly_digest = f.digest();
  return g;
}

// Samples f uniformly (one field draw per basis monomial) and builds its
// graph. Deterministic in (params, rng seed).
template <class Rng>
std::pair<BipartiteGraph, BiPoly> build_algebraic_graph(const ConstructionParams& params,
                                                        Rng& rng) {
  if (params.s < 2) throw PreconditionFailed("algebraic construction needs s >= 2");
  auto ctx = make_field(params.p, params.k, std::nullopt, /*seed=*/0);
  BiPoly f = sample_uniform(ctx, params.s, params.effective_d(), params.convention, rng);
  BipartiteGraph g = graph_from_poly(f, params.work_cap, params.workers);
  g.provenance().seed = params.seed;
  return {std::move(g), std::move(f)};
}

// Probabilistic baseline: every pair is an edge independently with
// probability n^{-1/s}. One uniform draw per pair in row-major order, even
// when the probability clamps to 1, so streams stay aligned.
template <class Rng>
BipartiteGraph build_random_graph(std::uint32_t n, std::uint32_t s, Rng& rng,
                                  std::uint64_t work_cap = kDefaultWorkCap) {
  if (n < 1 || s < 1) throw PreconditionFailed("baseline needs n >= 1 and s >= 1");
  if (std::uint64_t(n) > kMaxPartSize) throw CapExceeded("n exceeds the part-size cap");
  if (std::uint64_t(n) * n > work_cap) throw CapExceeded("n^2 pair draws exceed the work cap");
  const double prob = std::pow(double(n), -1.0 / double(s));
  BipartiteGraph g(n, n);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto bits = g.mutable_row(i);
    for (std::uint32_t j = 0; j < n; ++j) {
      if (bernoulli(rng, prob)) bits[j / 64] |= 1ull << (j % 64);
    }
  }
  g.finalize();
  g.provenance().kind = "random";
  g.provenance().s = s;
  g.provenance().edge_prob = prob;
  return g;
}

}  // namespace zarank
