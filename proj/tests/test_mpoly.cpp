#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "zarank/mpoly.hpp"
#include "zarank/rng.hpp"

using namespace zarank;

namespace {

struct ZeroRng {
  std::uint64_t next_u64() { return 0; }
};

Monomial mono(ExpVec x, ExpVec y) { return Monomial{std::move(x), std::move(y)}; }

PointVec pt(const FieldContext& f, std::initializer_list<std::uint32_t> ranks) {
  PointVec p;
  for (auto r : ranks) p.push_back(f.element(r));
  return p;
}

}  // namespace

TEST_CASE("monomial basis counts and contents") {
  auto b11 = monomial_basis(1, 1);
  REQUIRE(b11.size() == 4);  // C(2,1)^2
  std::set<std::pair<std::uint32_t, std::uint32_t>> got;
  for (auto& m : b11) got.insert({m.x[0], m.y[0]});
  REQUIRE(got == std::set<std::pair<std::uint32_t, std::uint32_t>>{
                     {0, 0}, {0, 1}, {1, 0}, {1, 1}});

  REQUIRE(monomial_basis(2, 4).size() == 225);  // C(6,4)^2 = 15^2
  REQUIRE(monomial_basis(1, 0).size() == 1);
  REQUIRE(monomial_basis(1, 0)[0] == mono({0}, {0}));

  // per-variable convention: (d+1)^s per block
  REQUIRE(monomial_basis(2, 1, DegreeConvention::PerVariable).size() == 16);
  REQUIRE(monomial_basis(2, 1, DegreeConvention::BlockTotal).size() == 9);
  REQUIRE(monomial_basis(2, 2, DegreeConvention::PerVariable).size() == 81);
}

TEST_CASE("basis order is graded-lex, x-block major, constant first") {
  const MonomialBasis b(2, 2, DegreeConvention::BlockTotal);
  REQUIRE(b.monomial(0) == mono({0, 0}, {0, 0}));
  REQUIRE(b.monomial(1) == mono({0, 0}, {0, 1}));
  REQUIRE(b.monomial(2) == mono({0, 0}, {1, 0}));
  REQUIRE(b.block_size() == 6);
  REQUIRE(b.monomial(6) == mono({0, 1}, {0, 0}));
  for (std::size_t i = 0; i < b.size(); ++i) REQUIRE(b.index(b.monomial(i)) == i);
}

TEST_CASE("sample_uniform determinism and the zero stub") {
  auto f = make_field(5, 1);
  SplitMix64Rng r1(11), r2(11);
  auto a = sample_uniform(f, 2, 2, DegreeConvention::BlockTotal, r1);
  auto b = sample_uniform(f, 2, 2, DegreeConvention::BlockTotal, r2);
  REQUIRE(a == b);

  ZeroRng z;
  auto zero = sample_uniform(f, 2, 2, DegreeConvention::BlockTotal, z);
  REQUIRE(zero.is_zero());
}

TEST_CASE("sample_uniform consumes exactly one field draw per basis monomial") {
  auto f = make_field(7, 1);
  const MonomialBasis basis(2, 3, DegreeConvention::BlockTotal);
  SplitMix64Rng r1(3), r2(3);
  (void)sample_uniform(f, 2, 3, DegreeConvention::BlockTotal, r1);
  auto follow1 = sample_uniform(f, 2, 3, DegreeConvention::BlockTotal, r1);
  // skipping the same number of field draws by hand realigns the stream
  for (std::size_t i = 0; i < basis.size(); ++i) (void)uniform_below(r2, f->q());
  auto follow2 = sample_uniform(f, 2, 3, DegreeConvention::BlockTotal, r2);
  REQUIRE(follow1 == follow2);
}

TEST_CASE("constant coefficient of a uniform sample is uniform on GF(5)") {
  auto f = make_field(5, 1);
  const MonomialBasis basis(1, 1, DegreeConvention::BlockTotal);
  SplitMix64Rng rng(20240617);
  std::vector<int> counts(5, 0);
  std::vector<FieldElement> coeffs;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) {
    sample_dense_ranks(*f, basis.size(), rng, coeffs);
    ++counts[coeffs[0].r];  // basis index 0 is the constant monomial
  }
  for (int c : counts) REQUIRE(std::abs(double(c) / trials - 0.2) < 0.01);
}

TEST_CASE("evaluate examples") {
  auto f7 = make_field(7, 1);
  BiPoly zero(f7, 2, 2, DegreeConvention::BlockTotal);
  REQUIRE(zero.evaluate(pt(*f7, {3, 1}), pt(*f7, {5, 2})) == f7->zero());

  // X1 - Y1 over GF(7)
  auto diff = BiPoly::from_terms(f7, 2, 2, DegreeConvention::BlockTotal,
                                 {{mono({1, 0}, {0, 0}), f7->one()},
                                  {mono({0, 0}, {1, 0}), f7->element(6)}});
  REQUIRE(diff.evaluate(pt(*f7, {3, 0}), pt(*f7, {3, 5})) == f7->zero());
  REQUIRE(diff.evaluate(pt(*f7, {3, 0}), pt(*f7, {4, 5})) != f7->zero());

  // X1*Y1 + 1 over GF(5) at (2,2)
  auto f5 = make_field(5, 1);
  auto g = BiPoly::from_terms(f5, 1, 2, DegreeConvention::BlockTotal,
                              {{mono({1}, {1}), f5->one()}, {mono({0}, {0}), f5->one()}});
  REQUIRE(g.evaluate(pt(*f5, {2}), pt(*f5, {2})) == f5->zero());
}

TEST_CASE("restrict_left examples") {
  auto f5 = make_field(5, 1);
  auto xy = BiPoly::from_terms(f5, 2, 2, DegreeConvention::BlockTotal,
                               {{mono({1, 0}, {1, 0}), f5->one()}});
  REQUIRE(xy.restrict_left(pt(*f5, {0, 3})).is_zero());

  // X1*Y1 + Y2 at u1 = 1 -> Y1 + Y2
  auto h = BiPoly::from_terms(f5, 2, 2, DegreeConvention::BlockTotal,
                              {{mono({1, 0}, {1, 0}), f5->one()},
                               {mono({0, 0}, {0, 1}), f5->one()}});
  auto g = h.restrict_left(pt(*f5, {1, 2}));
  REQUIRE(g.terms().size() == 2);
  REQUIRE(g.evaluate(pt(*f5, {1, 0})) == f5->one());
  REQUIRE(g.evaluate(pt(*f5, {0, 1})) == f5->one());
  REQUIRE(g.evaluate(pt(*f5, {2, 3})) == f5->zero());
}

TEST_CASE("restrict/evaluate commute exhaustively over GF(3)") {
  auto f = make_field(3, 1);
  SplitMix64Rng rng(42);
  auto poly = sample_uniform(f, 2, 2, DegreeConvention::BlockTotal, rng);
  const auto els = f->enumerate();
  for (auto u0 : els)
    for (auto u1 : els) {
      const PointVec u{u0, u1};
      const SPoly g = poly.restrict_left(u);
      for (auto y0 : els)
        for (auto y1 : els) {
          const PointVec y{y0, y1};
          REQUIRE(poly.evaluate(u, y) == g.evaluate(y));
        }
    }
}

TEST_CASE("SPoly evaluate examples") {
  auto f = make_field(5, 1);
  SPoly zero(f, 2, 2, DegreeConvention::BlockTotal);
  REQUIRE(zero.evaluate(pt(*f, {4, 4})) == f->zero());

  auto y1 = SPoly::from_terms(f, 1, 1, DegreeConvention::BlockTotal, {{{1}, f->one()}});
  REQUIRE(y1.evaluate(pt(*f, {4})) == f->element(4));

  // Y1^2 + Y2 at (1,4) over GF(5) -> 0
  auto g = SPoly::from_terms(f, 2, 2, DegreeConvention::BlockTotal,
                             {{{2, 0}, f->one()}, {{0, 1}, f->one()}});
  REQUIRE(g.evaluate(pt(*f, {1, 4})) == f->zero());
}

TEST_CASE("bivariate interpolation examples") {
  auto f7 = make_field(7, 1);

  // single node, constant target
  auto c = bivariate_interpolate(f7, pt(*f7, {2}), pt(*f7, {3}),
                                 {{f7->element(5)}}, 1);
  REQUIRE(c.terms().size() == 1);
  REQUIRE(c.evaluate(pt(*f7, {6}), pt(*f7, {1})) == f7->element(5));

  // all-zero targets give the zero polynomial (uniqueness)
  auto z = bivariate_interpolate(f7, pt(*f7, {0, 1}), pt(*f7, {0, 1}),
                                 {{f7->zero(), f7->zero()}, {f7->zero(), f7->zero()}}, 2);
  REQUIRE(z.is_zero());

  // identity pattern on {0,1} x {0,1}
  auto h = bivariate_interpolate(f7, pt(*f7, {0, 1}), pt(*f7, {0, 1}),
                                 {{f7->one(), f7->zero()}, {f7->zero(), f7->one()}}, 2);
  for (std::uint32_t a = 0; a < 2; ++a)
    for (std::uint32_t b = 0; b < 2; ++b) {
      const auto v = h.evaluate(pt(*f7, {a, 0}), pt(*f7, {b, 0}));
      REQUIRE(v == (a == b ? f7->one() : f7->zero()));
    }

  REQUIRE_THROWS_AS(bivariate_interpolate(f7, pt(*f7, {1, 1}), pt(*f7, {0, 1}),
                                          {{f7->zero(), f7->zero()}, {f7->zero(), f7->zero()}},
                                          2),
                    DuplicateNode);
}

TEST_CASE("interpolation is a bijection onto target matrices over GF(3)") {
  auto f = make_field(3, 1);
  const auto U = pt(*f, {0, 1});
  const auto V = pt(*f, {1, 2});
  std::set<std::string> seen;
  for (std::uint32_t mask = 0; mask < 81; ++mask) {
    std::uint32_t m = mask;
    std::vector<std::vector<FieldElement>> targets(2, std::vector<FieldElement>(2));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        targets[i][j] = f->element(m % 3);
        m /= 3;
      }
    auto h = bivariate_interpolate(f, U, V, targets, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const PointVec x{U[i], f->zero()}, y{V[j], f->zero()};
        REQUIRE(h.evaluate(x, y) == targets[i][j]);
      }
    seen.insert(h.serialize());
  }
  REQUIRE(seen.size() == 81);
}

TEST_CASE("serialization round-trips and the header is pinned") {
  auto f = make_field(3, 2);  // modulus found deterministically
  SplitMix64Rng rng(5);
  auto poly = sample_uniform(f, 2, 2, DegreeConvention::BlockTotal, rng);
  auto back = BiPoly::parse(poly.serialize());
  REQUIRE(back == poly);
  REQUIRE(back.digest() == poly.digest());

  auto f5 = make_field(5, 1);
  auto g = BiPoly::from_terms(f5, 1, 1, DegreeConvention::BlockTotal,
                              {{mono({1}, {0}), f5->element(2)}});
  REQUIRE(g.serialize() == "5 1 1 1 0 1\n2 | 1 | 0\n");

  BiPoly zero(f5, 1, 1, DegreeConvention::BlockTotal);
  REQUIRE(zero.serialize() == "5 1 1 1 0 1\n");
  REQUIRE(BiPoly::parse(zero.serialize()).is_zero());
  REQUIRE(zero.digest() != g.digest());
}

TEST_CASE("dense views agree with the sparse representation") {
  auto f = make_field(5, 1);
  const MonomialBasis basis(2, 2, DegreeConvention::BlockTotal);
  SplitMix64Rng rng(9);
  auto poly = sample_uniform(f, 2, 2, DegreeConvention::BlockTotal, rng);
  const auto dense = dense_coeffs(poly, basis);
  REQUIRE(bipoly_from_dense(f, basis, dense) == poly);

  // evaluation through tables matches direct evaluation
  std::vector<PointVec> pts;
  for (auto a : f->enumerate())
    for (auto b : f->enumerate()) pts.push_back({a, b});
  const BlockEvalTable table(*f, basis.block(), pts);
  std::vector<FieldElement> rowcoef(basis.block_size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    restrict_dense(*f, dense, table.row(i), rowcoef);
    const SPoly g = poly.restrict_left(pts[i]);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const auto fast = dot_dense(*f, rowcoef, table.row(j));
      REQUIRE(fast == g.evaluate(pts[j]));
      REQUIRE(fast == poly.evaluate(pts[i], pts[j]));
    }
  }
}

TEST_CASE("degree bound violations are rejected") {
  auto f = make_field(5, 1);
  REQUIRE_THROWS_AS(BiPoly::from_terms(f, 2, 1, DegreeConvention::BlockTotal,
                                       {{mono({1, 1}, {0, 0}), f->one()}}),
                    PreconditionFailed);
  // the same monomial is fine per-variable
  auto ok = BiPoly::from_terms(f, 2, 1, DegreeConvention::PerVariable,
                               {{mono({1, 1}, {0, 0}), f->one()}});
  REQUIRE(ok.terms().size() == 1);
}
