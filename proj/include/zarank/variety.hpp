#pragma once

// Common-zero enumeration of polynomial systems over F_q^s and the
// empirical side of the zero-set dichotomy: every system of s degree-d
// polynomials should have either |W| <= C or |W| >= q - C sqrt(q), with
// nothing in between. C is a runtime input that gets probed, never
// derived; an observed gap violation falsifies the chosen C and is
// reported, not dropped. Also: the random linear transform that makes a
// point set simple (pairwise distinct first coordinates), and the
// three-polynomial fixture showing the product of degrees is not a valid
// universal ceiling for the zero-dimensional side.

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

enum class VarietyVerdict { ZeroDimensional, HigherDimensional, GapViolation };

inline const char* to_string(VarietyVerdict v) {
  switch (v) {
    case VarietyVerdict::ZeroDimensional: return "zero-dimensional";
    case VarietyVerdict::HigherDimensional: return "higher-dimensional";
    default: return "gap-violation";
  }
}

struct ZeroSetClassification {
  std::uint64_t size = 0;
  VarietyVerdict verdict = VarietyVerdict::ZeroDimensional;
  std::uint64_t threshold_C = 0;
  double high_threshold = 0;  // q - C sqrt(q), display value
};

// size >= q - C sqrt(q), decided in exact integer arithmetic.
inline bool reaches_high_side(std::uint64_t size, std::uint64_t C, std::uint32_t q) {
  if (size >= q) return true;
  const std::uint64_t gap = q - size;
  return gap * gap <= C * C * std::uint64_t(q);
}

// The low side wins ties: when C >= q - C sqrt(q) the dichotomy is vacuous
// and every size classifies (low first), so the verdicts always partition.
inline ZeroSetClassification classify_size(std::uint64_t size, std::uint64_t C,
                                           std::uint32_t q) {
  ZeroSetClassification out;
  out.size = size;
  out.threshold_C = C;
  out.high_threshold = double(q) - double(C) * std::sqrt(double(q));
  if (size <= C)
    out.verdict = VarietyVerdict::ZeroDimensional;
  else if (reaches_high_side(size, C, q))
    out.verdict = VarietyVerdict::HigherDimensional;
  else
    out.verdict = VarietyVerdict::GapViolation;
  return out;
}

// Exact enumeration of { y in F_q^s : all polys vanish }, in point-index
// order.
inline std::vector<PointVec> common_zeros(std::span<const SPoly> polys, const FieldContext& ctx,
                                          std::uint32_t s,
                                          std::uint64_t work_cap = kDefaultWorkCap) {
  std::uint64_t total = 1;
  for (std::uint32_t j = 0; j < s; ++j) total *= ctx.q();
  if (total > work_cap) throw CapExceeded("q^s points exceed the work cap");
  for (const auto& g : polys)
    if (g.s() != s) throw PreconditionFailed("system arity mismatch");
  std::vector<PointVec> zeros;
  for (std::uint64_t i = 0; i < total; ++i) {
    const PointVec y = index_to_point(ctx, s, i);
    bool all = true;
    for (const auto& g : polys) {
      if (g.evaluate(y) != ctx.zero()) {
        all = false;
        break;
      }
    }
    if (all) zeros.push_back(y);
  }
  return zeros;
}

inline ZeroSetClassification classify_variety(std::span<const SPoly> polys,
                                              const FieldContext& ctx, std::uint32_t s,
                                              std::uint64_t C,
                                              std::uint64_t work_cap = kDefaultWorkCap) {
  return classify_size(common_zeros(polys, ctx, s, work_cap).size(), C, ctx.q());
}

// --- dichotomy scan ----------------------------------------------------------

struct DichotomyTrial {
  std::uint64_t size = 0;
  VarietyVerdict verdict = VarietyVerdict::ZeroDimensional;
  std::string poly_digest;
};

struct DichotomyReport {
  std::uint32_t q = 0, s = 0, d = 0;
  std::uint64_t threshold_C = 0;
  std::uint64_t trials = 0;
  std::vector<DichotomyTrial> per_trial;
  std::optional<std::uint64_t> max_low;   // largest zero-dimensional size seen
  std::optional<std::uint64_t> min_high;  // smallest higher-dimensional size seen
  std::vector<std::uint64_t> violations;  // trial indices

  std::string csv() const {
    std::ostringstream os;
    os << "trial,size,verdict\n";
    for (std::uint64_t i = 0; i < per_trial.size(); ++i)
      os << i << ',' << per_trial[i].size << ',' << to_string(per_trial[i].verdict) << '\n';
    return os.str();
  }
};

// Repeatedly draws count*s field coordinates (point-major) until the
// first coordinates are pairwise distinct.
template <class Rng>
std::vector<PointVec> sample_simple_points(const FieldContext& ctx, std::uint32_t s,
                                           std::uint32_t count, Rng& rng) {
  if (count > ctx.q()) throw PreconditionFailed("cannot pick that many distinct first coords");
  std::vector<PointVec> U(count, PointVec(s));
  for (;;) {
    for (auto& pt : U)
      for (auto& coord : pt) coord = {static_cast<std::uint32_t>(uniform_below(rng, ctx.q()))};
    bool simple = true;
    for (std::uint32_t i = 0; i < count && simple; ++i)
      for (std::uint32_t j = i + 1; j < count; ++j)
        if (U[i][0] == U[j][0]) {
          simple = false;
          break;
        }
    if (simple) return U;
  }
}

// Per trial (substream = trial index): sample f uniformly (basis-order
// coefficient draws), then a simple U of size s, restrict f to the s
// polynomials f(u, .), count their common zeros, classify. Trials are
// independent, so worker count never changes the report.
template <class Rng>
DichotomyReport dichotomy_scan(FieldRef ctx, std::uint32_t s, std::uint32_t d,
                               DegreeConvention conv, std::uint64_t C, std::uint64_t trials,
                               const Rng& base, std::uint64_t work_cap = kDefaultWorkCap,
                               std::uint32_t workers = 1) {
  const MonomialBasis basis(s, d, conv);
  const auto pts = enumerate_points(*ctx, s);
  if (pts.size() > work_cap) throw CapExceeded("q^s points exceed the work cap");
  const BlockEvalTable table(*ctx, basis.block(), pts);

  DichotomyReport rep;
  rep.q = ctx->q();
  rep.s = s;
  rep.d = d;
  rep.threshold_C = C;
  rep.trials = trials;
  rep.per_trial.resize(trials);

  detail::parallel_chunks(trials, workers, [&](std::uint32_t, std::uint64_t b, std::uint64_t e) {
    std::vector<FieldElement> coeffs;
    std::vector<std::vector<FieldElement>> rowcoef(s, std::vector<FieldElement>(basis.block_size()));
    for (std::uint64_t t = b; t < e; ++t) {
      auto rng = base.substream(t);
      sample_dense_ranks(*ctx, basis.size(), rng, coeffs);
      const auto U = sample_simple_points(*ctx, s, s, rng);
      const BlockEvalTable utable(*ctx, basis.block(), U);
      for (std::uint32_t i = 0; i < s; ++i)
        restrict_dense(*ctx, coeffs, utable.row(i), rowcoef[i]);
      std::uint64_t size = 0;
      for (std::size_t y = 0; y < pts.size(); ++y) {
        bool all = true;
        for (std::uint32_t i = 0; i < s; ++i) {
          if (dot_dense(*ctx, rowcoef[i], table.row(y)) != ctx->zero()) {
            all = false;
            break;
          }
        }
        if (all) ++size;
      }
      auto cls = classify_size(size, C, ctx->q());
      rep.per_trial[t] = {size, cls.verdict, bipoly_from_dense(ctx, basis, coeffs).digest()};
    }
  });

  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto& tr = rep.per_trial[t];
    switch (tr.verdict) {
      case VarietyVerdict::ZeroDimensional:
        if (!rep.max_low || tr.size > *rep.max_low) rep.max_low = tr.size;
        break;
      case VarietyVerdict::HigherDimensional:
        if (!rep.min_high || tr.size < *rep.min_high) rep.min_high = tr.size;
        break;
      case VarietyVerdict::GapViolation:
        rep.violations.push_back(t);
        break;
    }
  }
  return rep;
}

// --- simple-set linear transform ----------------------------------------------

struct LinearMap {
  std::uint32_t s = 0;
  std::vector<FieldElement> m;  // row-major s x s
  bool invertible = false;

  FieldElement at(std::uint32_t i, std::uint32_t j) const { return m[i * s + j]; }

  PointVec apply(const FieldContext& f, std::span<const FieldElement> x) const {
    PointVec y(s, f.zero());
    for (std::uint32_t i = 0; i < s; ++i)
      for (std::uint32_t j = 0; j < s; ++j)
        y[i] = f.add(y[i], f.mul(at(i, j), x[j]));
    return y;
  }
};

namespace detail {

// Gaussian elimination over the field.
inline bool matrix_invertible(const FieldContext& f, std::vector<FieldElement> a,
                              std::uint32_t s) {
  for (std::uint32_t col = 0; col < s; ++col) {
    std::uint32_t pivot = col;
    while (pivot < s && a[pivot * s + col] == f.zero()) ++pivot;
    if (pivot == s) return false;
    if (pivot != col)
      for (std::uint32_t j = 0; j < s; ++j) std::swap(a[pivot * s + j], a[col * s + j]);
    const FieldElement inv = f.inv(a[col * s + col]);
    for (std::uint32_t row = col + 1; row < s; ++row) {
      const FieldElement factor = f.mul(a[row * s + col], inv);
      if (factor == f.zero()) continue;
      for (std::uint32_t j = col; j < s; ++j)
        a[row * s + j] = f.sub(a[row * s + j], f.mul(factor, a[col * s + j]));
    }
  }
  return true;
}

}  // namespace detail

// Finds an invertible T whose first row is injective on U, so TU is
// simple. First rows are drawn uniformly (s field draws per attempt) until
// injective on U, then the remaining rows are drawn and the matrix is
// kept iff invertible; otherwise the whole draw repeats.
template <class Rng>
LinearMap simplify_points(const FieldContext& ctx, std::span<const PointVec> U, Rng& rng) {
  if (U.empty()) throw PreconditionFailed("simplify_points needs a nonempty point set");
  const std::uint32_t s = static_cast<std::uint32_t>(U[0].size());
  if (U.size() > s) throw PreconditionFailed("simplify_points needs |U| <= s");
  for (const auto& u : U)
    if (u.size() != s) throw PreconditionFailed("point arity mismatch");
  if (detail::binomial_u64_sat(U.size(), 2) >= ctx.q())
    throw PreconditionFailed("C(|U|,2) >= q: the union bound gives no guarantee");

  LinearMap T;
  T.s = s;
  T.m.assign(std::size_t(s) * s, ctx.zero());
  for (int attempt = 0; attempt < 1 << 20; ++attempt) {
    // first row: injective on U and nonzero (a zero row never completes)
    bool ok = true;
    bool nonzero = false;
    for (std::uint32_t j = 0; j < s; ++j) {
      T.m[j] = {static_cast<std::uint32_t>(uniform_below(rng, ctx.q()))};
      nonzero |= T.m[j] != ctx.zero();
    }
    if (!nonzero) continue;
    std::vector<FieldElement> images;
    for (const auto& u : U) {
      FieldElement img = ctx.zero();
      for (std::uint32_t j = 0; j < s; ++j) img = ctx.add(img, ctx.mul(T.m[j], u[j]));
      images.push_back(img);
    }
    for (std::size_t i = 0; i < images.size() && ok; ++i)
      for (std::size_t j = i + 1; j < images.size(); ++j)
        if (images[i] == images[j]) {
          ok = false;
          break;
        }
    if (!ok) continue;
    for (std::uint32_t i = 1; i < s; ++i)
      for (std::uint32_t j = 0; j < s; ++j)
        T.m[i * s + j] = {static_cast<std::uint32_t>(uniform_below(rng, ctx.q()))};
    if (detail::matrix_invertible(ctx, T.m, s)) {
      T.invertible = true;
      return T;
    }
  }
  throw Error("Internal", "simplify_points failed to converge");  // unreachable
}

// --- the product-of-degrees counterexample --------------------------------------

struct TsimermanFixture {
  std::uint32_t p = 0, d = 0;
  std::vector<SPoly> polys;          // over GF(p), three variables (x, y, z)
  std::uint64_t expected_size = 0;   // d (d-1)
  std::uint64_t degree_product = 0;  // 2d * 1 * 1
};

// f1 = (a g(x) + h(y)) (a^p g(x) + h(y)) expanded over GF(p^2) and
// projected onto GF(p) after checking every coefficient is fixed by the
// Frobenius map; g = prod (x - i), i < d, h = prod (y - j), j < d - 1;
// f2 = f3 = z. The common zero set is { g(x) = h(y) = z = 0 } of size
// d (d-1), while the degree product is only 2d.
inline TsimermanFixture tsimerman_fixture(std::uint32_t p, std::uint32_t d) {
  if (d < 1) throw PreconditionFailed("tsimerman_fixture needs d >= 1");
  if (p < d + 1) throw PreconditionFailed("tsimerman_fixture needs p >= d + 1");
  auto ext = make_field(p, 2, std::nullopt, 0);
  auto base = make_field(p, 1);
  const FieldElement a = ext->from_coeffs(std::vector<std::uint32_t>{0, 1});
  const FieldElement a_p = ext->frobenius(a);

  // univariate prod (t - r) over the extension, coefficients low-to-high
  auto monic_with_roots = [&](std::uint32_t roots) {
    std::vector<FieldElement> c{ext->one()};
    for (std::uint32_t r = 0; r < roots; ++r) {
      std::vector<FieldElement> nc(c.size() + 1, ext->zero());
      const FieldElement neg = ext->neg(ext->element(r));
      for (std::size_t t = 0; t < c.size(); ++t) {
        nc[t + 1] = ext->add(nc[t + 1], c[t]);
        nc[t] = ext->add(nc[t], ext->mul(c[t], neg));
      }
      c = std::move(nc);
    }
    return c;
  };
  const auto g = monic_with_roots(d);      // degree d in x
  const auto h = monic_with_roots(d - 1);  // degree d-1 in y

  // bivariate factors scale*g(x) + h(y) as (x-exp, y-exp) -> coefficient
  using BivMap = std::map<std::pair<std::uint32_t, std::uint32_t>, FieldElement>;
  auto factor = [&](FieldElement scale) {
    BivMap m;
    for (std::uint32_t i = 0; i < g.size(); ++i) {
      const FieldElement c = ext->mul(scale, g[i]);
      if (c != ext->zero()) m[{i, 0}] = c;
    }
    for (std::uint32_t j = 0; j < h.size(); ++j) {
      if (h[j] == ext->zero()) continue;
      auto [it, fresh] = m.emplace(std::make_pair(0u, j), h[j]);
      if (!fresh) it->second = ext->add(it->second, h[j]);
    }
    return m;
  };
  const BivMap A = factor(a), B = factor(a_p);
  BivMap prod;
  for (const auto& [ea, ca] : A)
    for (const auto& [eb, cb] : B) {
      const auto key = std::make_pair(ea.first + eb.first, ea.second + eb.second);
      const FieldElement v = ext->mul(ca, cb);
      auto [it, fresh] = prod.emplace(key, v);
      if (!fresh) it->second = ext->add(it->second, v);
    }

  std::vector<STerm> f1_terms;
  for (const auto& [e, c] : prod) {
    if (c == ext->zero()) continue;
    if (ext->frobenius(c) != c || !ext->in_prime_subfield(c))
      throw Error("Internal", "f1 coefficient not Frobenius-invariant");
    f1_terms.push_back({ExpVec{e.first, e.second, 0}, base->element(ext->coeffs(c)[0])});
  }
  const std::uint32_t bound = 2 * d;
  TsimermanFixture out;
  out.p = p;
  out.d = d;
  out.polys.push_back(SPoly::from_terms(base, 3, bound, DegreeConvention::BlockTotal,
                                        std::move(f1_terms)));
  const SPoly z_poly = SPoly::from_terms(base, 3, bound, DegreeConvention::BlockTotal,
                                         {{ExpVec{0, 0, 1}, base->one()}});
  out.polys.push_back(z_poly);
  out.polys.push_back(z_poly);
  out.expected_size = std::uint64_t(d) * (d - 1);
  out.degree_product = 2 * d;
  return out;
}

}  // namespace zarank
