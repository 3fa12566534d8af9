#include <gtest/gtest.h>

#include "qmap/expr.hpp"
#include "qmap/random.hpp"
#include "qmap/reduce.hpp"

using namespace qmap;

namespace {
QuadMap M_(const std::string& f, const std::string& g) { return parse_map(f, g); }
TowerElem L_(const std::string& s) {
  TowerCtx ctx;
  return parse_literal(s, ctx);
}
AffineClass D_(int k) { return AffineClass::discrete(k); }

Reduction expect_class(const QuadMap& F, const AffineClass& want) {
  Reduction r = reduce(F);
  EXPECT_TRUE(r.cls.has_value()) << F.str() << " " << r.reason;
  if (!r.cls) return r;
  EXPECT_TRUE(same_class(*r.cls, want)) << F.str() << " -> " << r.cls->str() << ", want " << want.str();
  EXPECT_TRUE(r.witness.has_value()) << F.str() << " " << r.reason;
  if (r.witness) {
    auto chk = verify_witness(F, canonical_form(*r.cls), *r.witness);
    EXPECT_TRUE(chk.ok) << F.str() << (chk.diff.empty() ? "" : " " + chk.diff[0]);
  }
  return r;
}
}  // namespace

TEST(NormalizePair, SharedTopPartIsSheared) {
  auto [G, w] = normalize_pair(M_("x^2+y", "x^2+z"));
  EXPECT_EQ(G.g().total_degree(), 1);
  EXPECT_TRUE(verify_witness(M_("x^2+y", "x^2+z"), G, w));
  auto [H, w2] = normalize_pair(M_("x^2+y^2", "2*x^2+2*y^2+z"));
  EXPECT_EQ(H, M_("x^2+y^2", "z"));
  EXPECT_TRUE(verify_witness(M_("x^2+y^2", "2*x^2+2*y^2+z"), H, w2));
  auto [I, w3] = normalize_pair(M_("x", "y"));
  EXPECT_EQ(I, M_("x", "y"));
}

TEST(ReduceT1, Examples) {
  auto r = expect_class(M_("x^2+z^2+y", "y^2+z^2+x+z"), AffineClass::family(AffineClass::Family1, {1, 1}));
  ASSERT_TRUE(r.cls);
  EXPECT_EQ(h0(r.cls->params[0], r.cls->params[1]), TowerElem(153));
  expect_class(M_("x^2+z^2+y", "y^2+z^2+4*x+i*z"),
               AffineClass::family(AffineClass::Family2, {L_("1/16"), L_("-1/16")}));
  expect_class(M_("x^2+z^2+y", "y^2+z^2+3*x"), AffineClass::family(AffineClass::Family4, {L_("1/9")}));
  expect_class(M_("x^2+z^2", "y^2+z^2+x+i*z"), D_(5));
  // beta^2 = alpha^2 lands in Family4 at A = -1, not on F_5
  expect_class(M_("x^2+z^2", "y^2+z^2+x+z"), AffineClass::family(AffineClass::Family4, {-1}));
}

TEST(ReduceT1, ExceptionalTripleRoutesToThree) {
  for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{{"1", "4"}, {"-1/4", "1/4"}, {"-4", "-1"}}) {
    TowerElem A = L_(a), B = L_(b);
    EXPECT_TRUE(h0(A, B).is_zero());
    EXPECT_TRUE(is_exceptional_pair(A, B));
    expect_class(canonical_form(AffineClass::family(AffineClass::Family1, {A, B})), D_(3));
  }
  EXPECT_FALSE(is_exceptional_pair(L_("1/16"), L_("-1/16")));
  EXPECT_EQ(h0(1, 1), TowerElem(153));
}

TEST(ReduceT1, FamilyOneOrbit) {
  auto orbit = family1_orbit(2, 1);
  EXPECT_LE(orbit.size(), 6u);
  for (auto& [a, b] : orbit)
    EXPECT_TRUE(same_class(AffineClass::family(AffineClass::Family1, {a, b}), AffineClass::family(AffineClass::Family1, {2, 1})));
  EXPECT_FALSE(same_class(AffineClass::family(AffineClass::Family1, {2, 1}), AffineClass::family(AffineClass::Family1, {1, 1})));
}

TEST(ReduceT2, Examples) {
  expect_class(M_("x^2+z^2+2*y", "y*z+x"), AffineClass::family(AffineClass::Family8, {0}));
  expect_class(M_("x^2+z^2+2*y", "y*z+x+sqrt(2)*(1+i)*y"), D_(9));
  expect_class(M_("x^2+z^2+2*y", "y*z+x-sqrt(2)*(1+i)*y"), D_(9));
  expect_class(M_("x^2+z^2", "y*z+x+y"), D_(11));
}

TEST(ReduceT2, FamilyEightParameterUpToFourthPower) {
  auto f1 = AffineClass::family(AffineClass::Family8, {1});
  EXPECT_TRUE(same_class(f1, AffineClass::family(AffineClass::Family8, {TowerElem::i()})));
  EXPECT_TRUE(same_class(f1, AffineClass::family(AffineClass::Family8, {-1})));
  EXPECT_FALSE(same_class(f1, AffineClass::family(AffineClass::Family8, {2})));
  auto r = reduce(M_("x^2+z^2+2*y", "y*z+x+i*y"));
  ASSERT_TRUE(r.cls);
  EXPECT_EQ(r.cls->kind, AffineClass::Family8);
  EXPECT_EQ(r.cls->params[0].pow(4), TowerElem(1));
}

TEST(ReduceT4, Examples) {
  expect_class(M_("x^2+2*y*z", "y^2+2*x*y+2*z"), D_(22));
  expect_class(M_("x^2+2*y*z", "y^2+2*x*y+2*x+2*y+2*z"), D_(22));
  expect_class(M_("x^2+2*y*z", "y^2+2*x*y+2*y"), D_(25));
}

TEST(ReduceRest, Examples) {
  expect_class(M_("x*y+z", "z^2+x"), D_(18));
  expect_class(M_("x*y", "y^2+2*y"), D_(44));
  expect_class(M_("0", "0"), D_(64));
  expect_class(M_("x", "y"), D_(62));
}

TEST(Reduce, RepresentativesClassifyToThemselves) {
  for (int k = 1; k <= 64; ++k) {
    auto r = expect_class(representative(k), representative_class(k));
    ASSERT_TRUE(r.cls) << k;
    EXPECT_EQ(*r.cls, representative_class(k)) << k;
    EXPECT_EQ(r.top, class_top_type(k)) << k;
  }
}

TEST(Reduce, RandomConjugatesKeepTheirClass) {
  rnd::Rng rng(11);
  for (int k = 1; k <= 64; ++k) {
    for (int trial = 0; trial < 3; ++trial) {
      QuadMap F = conjugate(representative(k), rng.affine_source(3, true), rng.affine_target(3, true));
      expect_class(F, representative_class(k));
    }
  }
}

TEST(Reduce, NoCubicPolicyGivesCertificateOnly) {
  Policy strict;
  strict.allow_cubic = false;
  for (auto [f, g, k] : std::vector<std::tuple<std::string, std::string, int>>{{"x^2+y^2+2*z", "z^2+x", 16}, {"x^2+3*y", "y^2+2*x", 34}}) {
    Reduction r = reduce(M_(f, g), strict);
    ASSERT_TRUE(r.cls) << f;
    EXPECT_EQ(*r.cls, D_(k));
    EXPECT_TRUE(r.certificate_only());
    EXPECT_FALSE(r.reason.empty());
    expect_class(M_(f, g), D_(k));
  }
}

TEST(Reduce, RepresentativeRangeIsChecked) {
  EXPECT_THROW(representative(0), std::out_of_range);
  EXPECT_THROW(representative(65), std::out_of_range);
}
