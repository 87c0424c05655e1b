#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <set>
#include <vector>

#include "zarank/variety.hpp"

using namespace zarank;

namespace {

// Zero draws for the first `zero_draws` calls (forcing sampled
// coefficients to rank 0), then a counting stream so point sampling can
// still find distinct coordinates.
struct StubRng {
  std::uint64_t zero_draws = 0;
  std::uint64_t counter = 0;
  std::uint64_t next_u64() { return ++counter <= zero_draws ? 0 : counter; }
  StubRng substream(std::uint64_t) const { return {zero_draws, 0}; }
};

SPoly coord(FieldRef ctx, std::uint32_t s, std::uint32_t var, std::uint32_t dbound) {
  ExpVec e(s, 0);
  e[var] = 1;
  return SPoly::from_terms(ctx, s, dbound, DegreeConvention::BlockTotal, {{e, ctx->one()}});
}

}  // namespace

TEST_CASE("common zeros of simple systems") {
  auto f = make_field(5, 1);
  const auto y1 = coord(f, 2, 0, 2), y2 = coord(f, 2, 1, 2);

  auto pointlike = common_zeros(std::vector<SPoly>{y1, y2}, *f, 2);
  REQUIRE(pointlike.size() == 1);
  REQUIRE(pointlike[0] == PointVec{f->zero(), f->zero()});

  auto line = common_zeros(std::vector<SPoly>{y1, y1}, *f, 2);
  REQUIRE(line.size() == 5);  // the line Y1 = 0

  // {Y1*Y2 - 1, Y1 - Y2} over GF(5): y1 = y2 with y1^2 = 1 -> {(1,1),(4,4)}
  auto prod = SPoly::from_terms(f, 2, 2, DegreeConvention::BlockTotal,
                                {{ExpVec{1, 1}, f->one()}, {ExpVec{0, 0}, f->neg(f->one())}});
  auto diff = SPoly::from_terms(f, 2, 2, DegreeConvention::BlockTotal,
                                {{ExpVec{1, 0}, f->one()}, {ExpVec{0, 1}, f->neg(f->one())}});
  auto zs = common_zeros(std::vector<SPoly>{prod, diff}, *f, 2);
  REQUIRE(zs.size() == 2);
  REQUIRE(zs[0] == PointVec{f->element(1), f->element(1)});
  REQUIRE(zs[1] == PointVec{f->element(4), f->element(4)});

  REQUIRE_THROWS_AS(common_zeros(std::vector<SPoly>{y1}, *f, 2, 3), CapExceeded);
}

TEST_CASE("classification and the exact high-side threshold") {
  auto f = make_field(5, 1);
  const auto y1 = coord(f, 2, 0, 2), y2 = coord(f, 2, 1, 2);
  auto cls = classify_variety(std::vector<SPoly>{y1, y2}, *f, 2, 4);
  REQUIRE(cls.verdict == VarietyVerdict::ZeroDimensional);
  REQUIRE(cls.size == 1);

  // q = 121, size 121 >= 121 - 4*11 = 77
  REQUIRE(classify_size(121, 4, 121).verdict == VarietyVerdict::HigherDimensional);
  REQUIRE(classify_size(77, 4, 121).verdict == VarietyVerdict::HigherDimensional);
  REQUIRE(classify_size(76, 4, 121).verdict == VarietyVerdict::GapViolation);
  REQUIRE(classify_size(5, 4, 121).verdict == VarietyVerdict::GapViolation);
  REQUIRE(classify_size(4, 4, 121).verdict == VarietyVerdict::ZeroDimensional);
  // q = 25: the open interval (4, 5) holds no integer, so no violations
  REQUIRE(classify_size(5, 4, 25).verdict == VarietyVerdict::HigherDimensional);
  REQUIRE(classify_size(4, 4, 25).verdict == VarietyVerdict::ZeroDimensional);
  // verdicts recompute from (size, C, q) alone
  for (std::uint64_t size : {0ull, 3ull, 10ull, 30ull, 100ull, 121ull}) {
    auto c = classify_size(size, 4, 121);
    const bool low = size <= 4, high = reaches_high_side(size, 4, 121);
    REQUIRE(((c.verdict == VarietyVerdict::ZeroDimensional) == low));
    REQUIRE(((c.verdict == VarietyVerdict::HigherDimensional) == (!low && high)));
    REQUIRE(((c.verdict == VarietyVerdict::GapViolation) == (!low && !high)));
  }
}

TEST_CASE("dichotomy scan basics") {
  auto f = make_field(3, 2);  // q = 9
  SplitMix64Rng rng(17);
  auto empty = dichotomy_scan(f, 2, 2, DegreeConvention::BlockTotal, 4, 0, rng);
  REQUIRE(empty.trials == 0);
  REQUIRE(empty.per_trial.empty());
  REQUIRE_FALSE(empty.max_low.has_value());

  // the zero-polynomial stub forces |W| = q^s on every trial (high side)
  StubRng z{MonomialBasis(2, 2, DegreeConvention::BlockTotal).size()};
  auto forced = dichotomy_scan(f, 2, 2, DegreeConvention::BlockTotal, 4, 5, z);
  REQUIRE(forced.per_trial.size() == 5);
  for (const auto& tr : forced.per_trial) {
    REQUIRE(tr.size == 81);
    REQUIRE(tr.verdict == VarietyVerdict::HigherDimensional);
  }
  REQUIRE(forced.min_high == 81);
  REQUIRE(forced.violations.empty());
}

TEST_CASE("dichotomy trials agree with the public common_zeros path") {
  auto f = make_field(5, 1);
  SplitMix64Rng base(88);
  auto rep = dichotomy_scan(f, 2, 2, DegreeConvention::BlockTotal, 4, 6, base);
  const MonomialBasis basis(2, 2, DegreeConvention::BlockTotal);
  for (std::uint64_t t = 0; t < 6; ++t) {
    auto rng = base.substream(t);
    std::vector<FieldElement> coeffs;
    sample_dense_ranks(*f, basis.size(), rng, coeffs);
    auto poly = bipoly_from_dense(f, basis, coeffs);
    REQUIRE(poly.digest() == rep.per_trial[t].poly_digest);
    const auto U = sample_simple_points(*f, 2, 2, rng);
    std::vector<SPoly> sys;
    for (const auto& u : U) sys.push_back(poly.restrict_left(u));
    REQUIRE(common_zeros(sys, *f, 2).size() == rep.per_trial[t].size);
  }
}

TEST_CASE("dichotomy scan is deterministic and worker independent") {
  auto f = make_field(5, 1);
  SplitMix64Rng base(123);
  auto a = dichotomy_scan(f, 2, 2, DegreeConvention::BlockTotal, 4, 20, base);
  auto b = dichotomy_scan(f, 2, 2, DegreeConvention::BlockTotal, 4, 20, base, kDefaultWorkCap, 3);
  REQUIRE(a.per_trial.size() == b.per_trial.size());
  for (std::size_t i = 0; i < a.per_trial.size(); ++i) {
    REQUIRE(a.per_trial[i].size == b.per_trial[i].size);
    REQUIRE(a.per_trial[i].poly_digest == b.per_trial[i].poly_digest);
  }
  REQUIRE(a.csv() == b.csv());
  REQUIRE(a.csv().rfind("trial,size,verdict\n", 0) == 0);
}

TEST_CASE("sample_simple_points yields pairwise distinct first coordinates") {
  auto f = make_field(7, 1);
  SplitMix64Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    auto U = sample_simple_points(*f, 3, 3, rng);
    REQUIRE(U.size() == 3);
    std::set<std::uint32_t> firsts;
    for (auto& u : U) firsts.insert(u[0].r);
    REQUIRE(firsts.size() == 3);
  }
  REQUIRE_THROWS_AS(sample_simple_points(*f, 2, 8, rng), PreconditionFailed);
}

TEST_CASE("simplify_points examples") {
  auto f = make_field(5, 1);
  SplitMix64Rng rng(9);

  // a set needing a swap: both points share the first coordinate
  const std::vector<PointVec> u2{{f->element(0), f->element(0)},
                                 {f->element(0), f->element(1)}};
  auto T = simplify_points(*f, u2, rng);
  REQUIRE(T.invertible);
  REQUIRE(T.apply(*f, u2[0])[0] != T.apply(*f, u2[1])[0]);

  // singleton sets are fine (the identity would do)
  const std::vector<PointVec> u1{{f->element(3), f->element(1)}};
  auto T1 = simplify_points(*f, u1, rng);
  REQUIRE(T1.invertible);

  // |U| = 3 > s = 2
  const std::vector<PointVec> big{{f->element(0), f->element(0)},
                                  {f->element(1), f->element(0)},
                                  {f->element(2), f->element(0)}};
  REQUIRE_THROWS_AS(simplify_points(*f, big, rng), PreconditionFailed);

  // C(|U|,2) >= q: three points over GF(3) give 3 pairs, no union bound
  auto f3 = make_field(3, 1);
  const std::vector<PointVec> u33{{f3->element(0), f3->element(0), f3->element(0)},
                                  {f3->element(1), f3->element(0), f3->element(0)},
                                  {f3->element(2), f3->element(1), f3->element(0)}};
  REQUIRE_THROWS_AS(simplify_points(*f3, u33, rng), PreconditionFailed);
}

TEST_CASE("simplify_points verifies on random sets over GF(7)^3") {
  auto f = make_field(7, 1);
  SplitMix64Rng rng(2718);
  for (int rep = 0; rep < 100; ++rep) {
    // arbitrary (not necessarily simple) 3-point sets with distinct points
    std::vector<PointVec> U;
    while (U.size() < 3) {
      PointVec u(3);
      for (auto& c : u) c = {static_cast<std::uint32_t>(uniform_below(rng, 7))};
      if (std::find(U.begin(), U.end(), u) == U.end()) U.push_back(u);
    }
    auto T = simplify_points(*f, U, rng);
    REQUIRE(T.invertible);
    REQUIRE(detail::matrix_invertible(*f, T.m, 3));
    std::set<std::uint32_t> firsts;
    for (const auto& u : U) firsts.insert(T.apply(*f, u)[0].r);
    REQUIRE(firsts.size() == 3);
  }
}

TEST_CASE("tsimerman fixture: zero set beats the degree product") {
  auto fx = tsimerman_fixture(5, 4);
  REQUIRE(fx.expected_size == 12);
  REQUIRE(fx.degree_product == 8);
  auto base = make_field(5, 1);
  auto zeros = common_zeros(fx.polys, *base, 3);
  REQUIRE(zeros.size() == 12);  // d(d-1) > prod deg f_i

  // zeros are exactly { g(x) = 0, h(y) = 0, z = 0 }: roots 0..3 and 0..2
  for (const auto& z : zeros) {
    REQUIRE(z[0].r <= 3);
    REQUIRE(z[1].r <= 2);
    REQUIRE(z[2].r == 0);
  }

  // every f1 coefficient landed in the prime field by construction; check
  // the 2-D zero set of f1 alone matches the product structure
  const auto& f1 = fx.polys[0];
  for (std::uint32_t x = 0; x < 5; ++x)
    for (std::uint32_t y = 0; y < 5; ++y) {
      const PointVec pt{base->element(x), base->element(y), base->element(0)};
      const bool vanishes = f1.evaluate(pt) == base->zero();
      REQUIRE(vanishes == (x <= 3 && y <= 2));
    }
}

TEST_CASE("tsimerman fixture across valid (p, d) pairs") {
  auto base_check = [](std::uint32_t p, std::uint32_t d) {
    auto fx = tsimerman_fixture(p, d);
    auto base = make_field(p, 1);
    REQUIRE(common_zeros(fx.polys, *base, 3).size() == fx.expected_size);
  };
  for (std::uint32_t p : {3u, 5u, 7u, 11u})
    for (std::uint32_t d = 2; d <= 4; ++d)
      if (p >= d + 1) base_check(p, d);
  REQUIRE_THROWS_AS(tsimerman_fixture(3, 4), PreconditionFailed);
}
