#pragma once

// Polynomials over GF(q) in two blocks of s variables (the sampling class
// for the graph construction) and in one block (restrictions f(u, .)).
//
// Monomial order is pinned for reproducibility: within a block, exponent
// vectors are graded-lexicographic (total degree first, then entrywise
// lexicographic); across blocks the x-block is major. The degree bound d
// is interpreted per the convention flag:
//   block-total:  sum of exponents <= d within each block (default)
//   per-variable: every single exponent <= d
// Sampling consumes exactly one field draw per basis monomial, in basis
// order, so identically-seeded streams reproduce identical polynomials.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "zarank/detail/sha256.hpp"
#include "zarank/errors.hpp"
#include "zarank/ffield.hpp"
#include "zarank/rng.hpp"

namespace zarank {

using PointVec = std::vector<FieldElement>;
using ExpVec = std::vector<std::uint32_t>;

enum class DegreeConvention { BlockTotal, PerVariable };

inline const char* to_string(DegreeConvention c) {
  return c == DegreeConvention::BlockTotal ? "block-total" : "per-variable";
}

inline DegreeConvention parse_convention(const std::string& s) {
  if (s == "block-total") return DegreeConvention::BlockTotal;
  if (s == "per-variable") return DegreeConvention::PerVariable;
  throw PreconditionFailed("unknown degree convention: " + s);
}

inline int compare_graded_lex(const ExpVec& a, const ExpVec& b) {
  std::uint64_t da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

struct GradedLexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    return compare_graded_lex(a, b) < 0;
  }
};

inline bool block_within_bound(const ExpVec& e, std::uint32_t d, DegreeConvention conv) {
  if (conv == DegreeConvention::PerVariable) {
    return std::all_of(e.begin(), e.end(), [d](std::uint32_t x) { return x <= d; });
  }
  std::uint64_t total = 0;
  for (auto x : e) total += x;
  return total <= d;
}

// All exponent vectors of one block, graded-lex sorted.
inline std::vector<ExpVec> block_exponents(std::uint32_t s, std::uint32_t d,
                                           DegreeConvention conv) {
  if (s < 1) throw PreconditionFailed("block arity must be >= 1");
  std::vector<ExpVec> out;
  ExpVec cur(s, 0);
  // odometer enumeration with per-variable cap d, filtered by convention
  for (;;) {
    if (block_within_bound(cur, d, conv)) out.push_back(cur);
    std::size_t i = 0;
    while (i < s && cur[i] == d) {
      cur[i] = 0;
      ++i;
    }
    if (i == s) break;
    ++cur[i];
    if (out.size() > (1u << 22)) throw CapExceeded("monomial basis too large");
  }
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

struct Monomial {
  ExpVec x, y;
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.x == b.x && a.y == b.y;
  }
};

inline int compare_monomial(const Monomial& a, const Monomial& b) {
  if (int c = compare_graded_lex(a.x, b.x)) return c;
  return compare_graded_lex(a.y, b.y);
}

struct Term {
  Monomial m;
  FieldElement c;
};

struct STerm {
  ExpVec e;
  FieldElement c;
};

// Ordered basis of the sampling class; product structure:
// index = x_block_index * block_size + y_block_index.
class MonomialBasis {
public:
  MonomialBasis(std::uint32_t s, std::uint32_t d, DegreeConvention conv)
      : s_(s), d_(d), conv_(conv), block_(block_exponents(s, d, conv)) {
    if (block_.size() * block_.size() > (1u << 22))
      throw CapExceeded("monomial basis too large");
  }

  std::uint32_t s() const { return s_; }
  std::uint32_t d() const { return d_; }
  DegreeConvention convention() const { return conv_; }
  const std::vector<ExpVec>& block() const { return block_; }
  std::size_t block_size() const { return block_.size(); }
  std::size_t size() const { return block_.size() * block_.size(); }

  Monomial monomial(std::size_t idx) const {
    return {block_[idx / block_.size()], block_[idx % block_.size()]};
  }

  std::size_t block_index(const ExpVec& e) const {
    auto it = std::lower_bound(block_.begin(), block_.end(), e, GradedLexLess{});
    if (it == block_.end() || !(*it == e))
      throw PreconditionFailed("exponent vector outside the basis");
    return static_cast<std::size_t>(it - block_.begin());
  }

  std::size_t index(const Monomial& m) const {
    return block_index(m.x) * block_.size() + block_index(m.y);
  }

private:
  std::uint32_t s_, d_;
  DegreeConvention conv_;
  std::vector<ExpVec> block_;
};

inline std::vector<Monomial> monomial_basis(std::uint32_t s, std::uint32_t d,
                                            DegreeConvention conv = DegreeConvention::BlockTotal) {
  const MonomialBasis b(s, d, conv);
  std::vector<Monomial> out;
  out.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out.push_back(b.monomial(i));
  return out;
}

// One-block polynomial (restrictions, variety systems).
class SPoly {
public:
  SPoly(FieldRef ctx, std::uint32_t s, std::uint32_t d, DegreeConvention conv)
      : ctx_(std::move(ctx)), s_(s), d_(d), conv_(conv) {}

  static SPoly from_terms(FieldRef ctx, std::uint32_t s, std::uint32_t d, DegreeConvention conv,
                          std::vector<STerm> terms) {
    std::map<ExpVec, FieldElement, GradedLexLess> acc;
    for (auto& t : terms) {
      if (t.e.size() != s) throw PreconditionFailed("exponent arity mismatch");
      if (!block_within_bound(t.e, d, conv))
        throw PreconditionFailed("term exceeds the degree bound");
      auto [it, fresh] = acc.emplace(t.e, t.c);
      if (!fresh) it->second = ctx->add(it->second, t.c);
    }
    SPoly p(std::move(ctx), s, d, conv);
    for (auto& [e, c] : acc)
      if (c != p.ctx_->zero()) p.terms_.push_back({e, c});
    return p;
  }

  const FieldContext& ctx() const { return *ctx_; }
  FieldRef ctx_ref() const { return ctx_; }
  std::uint32_t s() const { return s_; }
  std::uint32_t degree_bound() const { return d_; }
  DegreeConvention convention() const { return conv_; }
  const std::vector<STerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  FieldElement evaluate(std::span<const FieldElement> y) const {
    if (y.size() != s_) throw PreconditionFailed("point arity mismatch");
    const auto& f = *ctx_;
    FieldElement acc = f.zero();
    for (const auto& t : terms_) {
      FieldElement v = t.c;
      for (std::uint32_t i = 0; i < s_; ++i)
        if (t.e[i]) v = f.mul(v, f.pow(y[i], t.e[i]));
      acc = f.add(acc, v);
    }
    return acc;
  }

  friend bool operator==(const SPoly& a, const SPoly& b) {
    if (!a.ctx_->same_field(*b.ctx_) || a.s_ != b.s_) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].e == b.terms_[i].e && a.terms_[i].c == b.terms_[i].c)) return false;
    return true;
  }

private:
  FieldRef ctx_;
  std::uint32_t s_, d_;
  DegreeConvention conv_;
  std::vector<STerm> terms_;  // graded-lex, no zero coefficients
};

// Two-block polynomial: the random object the construction samples.
class BiPoly {
public:
  BiPoly(FieldRef ctx, std::uint32_t s, std::uint32_t d, DegreeConvention conv)
      : ctx_(std::move(ctx)), s_(s), d_(d), conv_(conv) {}

  static BiPoly from_terms(FieldRef ctx, std::uint32_t s, std::uint32_t d, DegreeConvention conv,
                           std::vector<Term> terms) {
    std::vector<std::pair<Monomial, FieldElement>> flat;
    flat.reserve(terms.size());
    for (auto& t : terms) {
      if (t.m.x.size() != s || t.m.y.size() != s)
        throw PreconditionFailed("monomial arity mismatch");
      if (!block_within_bound(t.m.x, d, conv) || !block_within_bound(t.m.y, d, conv))
        throw PreconditionFailed("monomial exceeds the degree bound");
      flat.emplace_back(t.m, t.c);
    }
    std::sort(flat.begin(), flat.end(), [](const auto& a, const auto& b) {
      return compare_monomial(a.first, b.first) < 0;
    });
    BiPoly p(ctx, s, d, conv);
    for (auto& [m, c] : flat) {
      if (!p.terms_.empty() && p.terms_.back().m == m) {
        p.terms_.back().c = ctx->add(p.terms_.back().c, c);
        if (p.terms_.back().c == ctx->zero()) p.terms_.pop_back();
      } else if (c != ctx->zero()) {
        p.terms_.push_back({m, c});
      }
    }
    // a merge may have re-zeroed an interior term; compact defensively
    std::erase_if(p.terms_, [&](const Term& t) { return t.c == ctx->zero(); });
    return p;
  }

  const FieldContext& ctx() const { return *ctx_; }
  FieldRef ctx_ref() const { return ctx_; }
  std::uint32_t s() const { return s_; }
  std::uint32_t degree_bound() const { return d_; }
  DegreeConvention convention() const { return conv_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  FieldElement evaluate(std::span<const FieldElement> x, std::span<const FieldElement> y) const {
    if (x.size() != s_ || y.size() != s_) throw PreconditionFailed("point arity mismatch");
    const auto& f = *ctx_;
    FieldElement acc = f.zero();
    for (const auto& t : terms_) {
      FieldElement v = t.c;
      for (std::uint32_t i = 0; i < s_; ++i)
        if (t.m.x[i]) v = f.mul(v, f.pow(x[i], t.m.x[i]));
      for (std::uint32_t i = 0; i < s_; ++i)
        if (t.m.y[i]) v = f.mul(v, f.pow(y[i], t.m.y[i]));
      acc = f.add(acc, v);
    }
    return acc;
  }

  // Substitute X = u, collect by y-monomial.
  SPoly restrict_left(std::span<const FieldElement> u) const {
    if (u.size() != s_) throw PreconditionFailed("point arity mismatch");
    const auto& f = *ctx_;
    std::map<ExpVec, FieldElement, GradedLexLess> acc;
    for (const auto& t : terms_) {
      FieldElement v = t.c;
      for (std::uint32_t i = 0; i < s_; ++i)
        if (t.m.x[i]) v = f.mul(v, f.pow(u[i], t.m.x[i]));
      if (v == f.zero()) continue;
      auto [it, fresh] = acc.emplace(t.m.y, v);
      if (!fresh) it->second = f.add(it->second, v);
    }
    std::vector<STerm> terms;
    for (auto& [e, c] : acc)
      if (c != f.zero()) terms.push_back({e, c});
    return SPoly::from_terms(ctx_, s_, d_, conv_, std::move(terms));
  }

  // Text form, one term per line, coefficients as ranks:
  //   p k s d m0 ... mk
  //   c | e1 ... es | g1 ... gs
  std::string serialize() const {
    std::ostringstream os;
    os << ctx_->p() << ' ' << ctx_->k() << ' ' << s_ << ' ' << d_;
    for (auto m : ctx_->modulus()) os << ' ' << m;
    os << '\n';
    for (const auto& t : terms_) {
      os << t.c.r << " |";
      for (auto e : t.m.x) os << ' ' << e;
      os << " |";
      for (auto e : t.m.y) os << ' ' << e;
      os << '\n';
    }
    return os.str();
  }

  std::string digest() const { return detail::sha256_hex(serialize()); }

  static BiPoly parse(const std::string& text,
                      DegreeConvention conv = DegreeConvention::BlockTotal) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw PreconditionFailed("empty polynomial text");
    std::istringstream hs(header);
    std::uint32_t p, k, s, d;
    if (!(hs >> p >> k >> s >> d)) throw PreconditionFailed("bad polynomial header");
    std::vector<std::uint32_t> modulus;
    std::uint32_t m;
    while (hs >> m) modulus.push_back(m);
    auto ctx = make_field(p, k, modulus);
    std::vector<Term> terms;
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      Term t;
      std::uint64_t c;
      std::string bar;
      if (!(ls >> c >> bar) || bar != "|") throw PreconditionFailed("bad term line: " + line);
      t.c = ctx->element(c);
      t.m.x.resize(s);
      for (auto& e : t.m.x)
        if (!(ls >> e)) throw PreconditionFailed("bad term line: " + line);
      if (!(ls >> bar) || bar != "|") throw PreconditionFailed("bad term line: " + line);
      t.m.y.resize(s);
      for (auto& e : t.m.y)
        if (!(ls >> e)) throw PreconditionFailed("bad term line: " + line);
      terms.push_back(std::move(t));
    }
    return from_terms(std::move(ctx), s, d, conv, std::move(terms));
  }

  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    if (!a.ctx_->same_field(*b.ctx_) || a.s_ != b.s_ || a.d_ != b.d_) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].m == b.terms_[i].m && a.terms_[i].c == b.terms_[i].c)) return false;
    return true;
  }

private:
  FieldRef ctx_;
  std::uint32_t s_, d_;
  DegreeConvention conv_;
  std::vector<Term> terms_;  // x-major graded-lex, no zero coefficients
};

// --- dense views --------------------------------------------------------

inline std::vector<FieldElement> dense_coeffs(const BiPoly& f, const MonomialBasis& basis) {
  std::vector<FieldElement> out(basis.size(), f.ctx().zero());
  for (const auto& t : f.terms()) out[basis.index(t.m)] = t.c;
  return out;
}

inline BiPoly bipoly_from_dense(FieldRef ctx, const MonomialBasis& basis,
                                std::span<const FieldElement> coeffs) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != ctx->zero()) terms.push_back({basis.monomial(i), coeffs[i]});
  return BiPoly::from_terms(std::move(ctx), basis.s(), basis.d(), basis.convention(),
                            std::move(terms));
}

// Exactly `count` field draws, one uniform rank per entry, in order.
template <class Rng>
void sample_dense_ranks(const FieldContext& f, std::size_t count, Rng& rng,
                        std::vector<FieldElement>& out) {
  out.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = {static_cast<std::uint32_t>(uniform_below(rng, f.q()))};
}

// Uniform over the whole class: independent uniform coefficient per basis
// monomial. Consumes exactly basis.size() field draws in basis order.
template <class Rng>
BiPoly sample_uniform(FieldRef ctx, std::uint32_t s, std::uint32_t d, DegreeConvention conv,
                      Rng& rng) {
  const MonomialBasis basis(s, d, conv);
  std::vector<FieldElement> coeffs;
  sample_dense_ranks(*ctx, basis.size(), rng, coeffs);
  return bipoly_from_dense(std::move(ctx), basis, coeffs);
}

// --- Lagrange interpolation ---------------------------------------------

namespace detail {

// Coefficients (low-to-high, length n) of the unique degree < n polynomial
// through (nodes[i], values[i]).
inline std::vector<FieldElement> lagrange_univariate(const FieldContext& f,
                                                     std::span<const FieldElement> nodes,
                                                     std::span<const FieldElement> values) {
  const std::size_t n = nodes.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (nodes[i] == nodes[j]) throw DuplicateNode("repeated interpolation node");
  std::vector<FieldElement> res(n, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<FieldElement> b{f.one()};
    FieldElement denom = f.one();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      // b *= (X - nodes[j])
      std::vector<FieldElement> nb(b.size() + 1, f.zero());
      const FieldElement neg = f.neg(nodes[j]);
      for (std::size_t t = 0; t < b.size(); ++t) {
        nb[t + 1] = f.add(nb[t + 1], b[t]);
        nb[t] = f.add(nb[t], f.mul(b[t], neg));
      }
      b = std::move(nb);
      denom = f.mul(denom, f.sub(nodes[i], nodes[j]));
    }
    const FieldElement scale = f.mul(values[i], f.inv(denom));
    for (std::size_t t = 0; t < b.size(); ++t) res[t] = f.add(res[t], f.mul(scale, b[t]));
  }
  return res;
}

}  // namespace detail

// Lagrange interpolation applied twice: the unique h supported on
// X1^i Y1^j (i < |U|, j < |V|) with h(u, v) = targets[u][v]. The scalars
// in U (resp. V) are first coordinates and must be pairwise distinct.
inline BiPoly bivariate_interpolate(FieldRef ctx, std::span<const FieldElement> U,
                                    std::span<const FieldElement> V,
                                    const std::vector<std::vector<FieldElement>>& targets,
                                    std::uint32_t d) {
  const std::size_t s = U.size(), r = V.size();
  if (s < 1 || r < 1) throw PreconditionFailed("interpolation needs nonempty node sets");
  if (s > d || r > d) throw PreconditionFailed("node set larger than the degree bound");
  if (targets.size() != s) throw PreconditionFailed("target matrix has wrong shape");
  for (const auto& row : targets)
    if (row.size() != r) throw PreconditionFailed("target matrix has wrong shape");
  const auto& f = *ctx;

  // first pass: for each u, a univariate h_u(Y1) with h_u(v_j) = targets
  std::vector<std::vector<FieldElement>> rows(s);
  for (std::size_t i = 0; i < s; ++i)
    rows[i] = detail::lagrange_univariate(f, V, targets[i]);
  // second pass: interpolate each Y1-coefficient across U
  std::vector<Term> terms;
  const std::uint32_t arity = static_cast<std::uint32_t>(s);
  for (std::size_t jp = 0; jp < r; ++jp) {
    std::vector<FieldElement> w(s);
    for (std::size_t i = 0; i < s; ++i) w[i] = rows[i][jp];
    const auto col = detail::lagrange_univariate(f, U, w);
    for (std::size_t ip = 0; ip < s; ++ip) {
      if (col[ip] == f.zero()) continue;
      Monomial m;
      m.x.assign(arity, 0);
      m.y.assign(arity, 0);
      m.x[0] = static_cast<std::uint32_t>(ip);
      m.y[0] = static_cast<std::uint32_t>(jp);
      terms.push_back({std::move(m), col[ip]});
    }
  }
  return BiPoly::from_terms(std::move(ctx), arity, d, DegreeConvention::BlockTotal,
                            std::move(terms));
}

// --- evaluation tables for hot scans --------------------------------------

// Values of every exponent vector at every supplied point.
class BlockEvalTable {
public:
  BlockEvalTable(const FieldContext& f, const std::vector<ExpVec>& exps,
                 std::span<const PointVec> points)
      : n_exps_(exps.size()) {
    vals_.resize(points.size() * n_exps_);
    for (std::size_t ip = 0; ip < points.size(); ++ip) {
      const auto& pt = points[ip];
      for (std::size_t ie = 0; ie < n_exps_; ++ie) {
        FieldElement v = f.one();
        for (std::size_t i = 0; i < pt.size(); ++i)
          if (exps[ie][i]) v = f.mul(v, f.pow(pt[i], exps[ie][i]));
        vals_[ip * n_exps_ + ie] = v;
      }
    }
  }

  std::size_t n_exps() const { return n_exps_; }
  std::span<const FieldElement> row(std::size_t point) const {
    return {vals_.data() + point * n_exps_, n_exps_};
  }

private:
  std::size_t n_exps_;
  std::vector<FieldElement> vals_;
};

// acc = sum_i a[i] * b[i]; fast path for prime fields.
inline FieldElement dot_dense(const FieldContext& f, std::span<const FieldElement> a,
                              std::span<const FieldElement> b) {
  if (f.k() == 1) {
    std::uint64_t acc = 0;
    const std::uint64_t p = f.p();
    for (std::size_t i = 0; i < a.size(); ++i) {
      acc += std::uint64_t(a[i].r) * b[i].r;
      if (acc >= (1ull << 62)) acc %= p;
    }
    return {static_cast<std::uint32_t>(acc % p)};
  }
  FieldElement acc = f.zero();
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

// out[yi] = sum_xi coeffs[xi * bs + yi] * xvals[xi], bs = out.size().
inline void restrict_dense(const FieldContext& f, std::span<const FieldElement> coeffs,
                           std::span<const FieldElement> xvals, std::span<FieldElement> out) {
  const std::size_t bs = out.size();
  if (f.k() == 1) {
    const std::uint64_t p = f.p();
    std::vector<std::uint64_t> acc(bs, 0);
    for (std::size_t xi = 0; xi < xvals.size(); ++xi) {
      const std::uint64_t xv = xvals[xi].r;
      if (xv == 0) continue;
      const auto* row = coeffs.data() + xi * bs;
      for (std::size_t yi = 0; yi < bs; ++yi) acc[yi] += row[yi].r * xv;
    }
    for (std::size_t yi = 0; yi < bs; ++yi)
      out[yi] = {static_cast<std::uint32_t>(acc[yi] % p)};
    return;
  }
  for (std::size_t yi = 0; yi < bs; ++yi) out[yi] = f.zero();
  for (std::size_t xi = 0; xi < xvals.size(); ++xi) {
    if (xvals[xi] == f.zero()) continue;
    const auto* row = coeffs.data() + xi * bs;
    for (std::size_t yi = 0; yi < bs; ++yi)
      out[yi] = f.add(out[yi], f.mul(row[yi], xvals[xi]));
  }
}

}  // namespace zarank
