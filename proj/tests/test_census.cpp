#include <gtest/gtest.h>

#include "qmap/census.hpp"
#include "qmap/expr.hpp"
#include "qmap/random.hpp"
#include "qmap/report.hpp"

using namespace qmap;

namespace {
TowerElem L_(const std::string& s) {
  TowerCtx ctx;
  return parse_literal(s, ctx);
}
Poly P_(const std::string& s) { return parse_poly(s); }

void expect_counts(const Census& c, int cusps, int dcusps, int nodes) {
  EXPECT_EQ(c.cusps, cusps) << c.str();
  EXPECT_EQ(c.double_cusps, dcusps) << c.str();
  EXPECT_EQ(c.nodes, nodes) << c.str();
}
}  // namespace

TEST(CensusFamily1, Examples) {
  expect_counts(census_family1(1, 1), 6, 0, 4);
  expect_counts(census_family1(L_("1/16"), L_("-1/16")), 4, 1, 3);
  expect_counts(census_family1(1, 4), 2, 2, 2);
  EXPECT_EQ(hc_poly(1, 1), P_("t^3*(t+1)^3+t^3-(t+1)^3"));
  EXPECT_THROW(census_family1(0, 1), ParamOutOfDomain);
  EXPECT_THROW(census_family1(1, 0), ParamOutOfDomain);
}

TEST(CensusFamily8, Examples) {
  Census c0 = census_family8(0);
  expect_counts(c0, 4, 0, 2);
  EXPECT_EQ(UPoly::from(c0.cusp_poly, Var::T).monic(), UPoly::from(P_("3*t^4-1"), Var::T).monic());
  EXPECT_EQ(UPoly::from(c0.node_poly, Var::T).monic(), UPoly::from(P_("t^4+1"), Var::T).monic());
  TowerCtx ctx;
  expect_counts(census_family8(parse_literal("sqrt(2)*(1+i)", ctx)), 2, 1, 1);
  expect_counts(census_family8(1), 4, 0, 2);
}

TEST(CensusFamily4, Examples) {
  Census a = family4_structure(L_("1/4"));
  EXPECT_EQ(a.cusps, 3);
  EXPECT_EQ(a.intersections, 3);
  Census b = family4_structure(1);
  EXPECT_EQ(b.cusps, 2);
  EXPECT_EQ(b.intersections, 2);
  Census c = family4_structure(-1);
  EXPECT_EQ(c.cusps, 3);
  EXPECT_EQ(c.intersections, 3);
  EXPECT_THROW(family4_structure(0), ParamOutOfDomain);
}

TEST(CensusDiscrete, Examples) {
  expect_counts(census_discrete(16), 3, 0, 0);
  Census c22 = census_discrete(22);
  expect_counts(c22, 2, 0, 1);
  // cusps at t = 0 and t = -1/2
  EXPECT_EQ(UPoly::from(c22.cusp_poly, Var::T).monic(), UPoly::from(P_("t^2+t/2"), Var::T));
  EXPECT_EQ(census_discrete(27).cusps, 1);
  EXPECT_EQ(census_discrete(10).cusps, 1);
  expect_counts(census_discrete(23), 0, 1, 0);
  expect_counts(census_discrete(9), 2, 1, 1);
  EXPECT_FALSE(census_discrete(64).applicable);
}

TEST(CensusDiscrete, ImageIntersections) {
  std::vector<std::pair<int, int>> want = {{6, 3}, {7, 1}, {11, 2}, {13, 1}, {17, 1}, {24, 1}, {37, 1}};
  for (auto [k, n] : want) EXPECT_EQ(census_discrete(k).intersections, n) << k;
}

TEST(CensusDiscrete, EveryClassIsComputed) {
  for (int k = 1; k <= 64; ++k) {
    Census c = census_discrete(k);
    EXPECT_GE(c.cusps, 0);
    EXPECT_GE(c.nodes, 0);
    EXPECT_EQ(c.note.find("odd"), std::string::npos) << k << " " << c.note;
    EXPECT_EQ(c.note.find("differs"), std::string::npos) << k << " " << c.note;
  }
}

TEST(Resultants, PrintedIdentitiesHold) {
  auto checks = verify_resultant_identities();
  ASSERT_EQ(checks.size(), 3u);
  for (auto& c : checks) EXPECT_EQ(c.sign, 1) << c.name;
}

TEST(CriticalStructure, AllClasses) {
  for (int k = 1; k <= 64; ++k) {
    auto r = verify_critical_structure(k);
    EXPECT_TRUE(r.ok) << k << (r.failures.empty() ? "" : ": " + r.failures[0]);
  }
}

TEST(CriticalStructure, Examples) {
  auto c7 = census_discrete(7).components;
  ASSERT_EQ(c7.size(), 3u);
  for (auto& c : c7) {
    EXPECT_EQ(c.kind, Component::Line);
    EXPECT_EQ(c.restriction, Component::TwoToOne);
  }
  auto c18 = census_discrete(18).components;
  ASSERT_EQ(c18.size(), 1u);
  EXPECT_EQ(c18[0].kind, Component::Hyperbola);
  EXPECT_EQ(c18[0].restriction, Component::Injective);
  auto c64 = stated_components(64);
  ASSERT_EQ(c64.size(), 1u);
  EXPECT_EQ(c64[0].kind, Component::Space);
  EXPECT_NO_THROW(verify_critical_structure(18, true));
}

TEST(CensusProperties, CommonRootIffH0Vanishes) {
  rnd::Rng rng(5);
  int vanishing = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    TowerElem A, B;
    if (trial % 10 == 0) {
      static const char* pts[][2] = {{"1", "4"}, {"-1/4", "1/4"}, {"-4", "-1"}, {"1/16", "-1/16"}};
      A = L_(pts[trial / 10 % 4][0]);
      B = L_(pts[trial / 10 % 4][1]);
    } else {
      do A = rng.gaussian(4, trial % 2); while (A.is_zero());
      do B = rng.gaussian(4, trial % 3 == 0); while (B.is_zero());
    }
    UPoly g = gcd(UPoly::from(hc_poly(A, B), Var::T), UPoly::from(hn_poly(A, B), Var::T));
    bool h0_zero = h0(A, B).is_zero();
    vanishing += h0_zero;
    ASSERT_EQ(g.degree() > 0, h0_zero) << A.str() << " " << B.str();
  }
  EXPECT_GT(vanishing, 0);
}

TEST(CensusProperties, NodeParametersPairUp) {
  rnd::Rng rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    TowerElem A, B;
    do A = rng.gaussian(5, trial % 2); while (A.is_zero());
    do B = rng.gaussian(5); while (B.is_zero());
    size_t n = distinct_root_count(UPoly::from(hn_poly(A, B), Var::T));
    ASSERT_EQ(n % 2, 0u) << A.str() << " " << B.str();
  }
}

TEST(CensusProperties, InvariantUnderConjugation) {
  rnd::Rng rng(3);
  for (int k : {1, 2, 6, 7, 9, 16, 22, 27}) {
    QuadMap F = conjugate(representative(k), rng.affine_source(2, true), rng.affine_target(2, true));
    ClassReport r = classify(F);
    ASSERT_TRUE(r.census) << k;
    EXPECT_EQ(r.census->signature(), census_discrete(k).signature()) << k;
  }
}

TEST(Parametrization, ComposeMatchesSubstitution) {
  Parametrization p = family1_curve();
  QuadMap F = canonical_form(AffineClass::family(AffineClass::Family1, {1, 1}));
  EXPECT_TRUE(p.annihilates(F));
  EXPECT_FALSE(p.annihilates(parse_map("x^2", "y^2+z")));
}
