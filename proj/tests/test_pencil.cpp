#include <gtest/gtest.h>

#include "qmap/expr.hpp"
#include "qmap/pencil.hpp"
#include "qmap/random.hpp"

using namespace qmap;

namespace {
QuadMap M_(const std::string& f, const std::string& g) { return parse_map(f, g); }
Poly P_(const std::string& s) { return parse_poly(s); }

void expect_witness(const QuadMap& F, TopType t) {
  auto c = classify_top(F);
  ASSERT_EQ(c.type, t) << F.str();
  ASSERT_TRUE(c.witness.has_value()) << F.str() << " " << c.note;
  EXPECT_EQ(c.witness->apply(F), top_normal_form(t)) << F.str();
  EXPECT_TRUE(verify_witness(F, top_normal_form(t), *c.witness)) << F.str();
}
}  // namespace

TEST(Pencil, DeterminantCubics) {
  EXPECT_EQ(pencil_cubic(M_("x^2+z^2", "y^2+z^2")), P_("lambda^2*mu+lambda*mu^2"));
  EXPECT_EQ(pencil_cubic(M_("x^2+2*y*z", "z^2")), P_("-lambda^3"));
  EXPECT_TRUE(pencil_cubic(M_("x^2", "y^2")).is_zero());
  EXPECT_THROW(pencil_cubic(M_("x^2", "y")), DegreeMismatch);
  EXPECT_THROW(pencil_cubic(M_("x^2+1", "y^2")), NotHomogeneous);
}

TEST(Pencil, NormalFormsClassifyAsThemselves) {
  for (int k = 1; k <= 21; ++k) {
    TopType t = static_cast<TopType>(k);
    EXPECT_EQ(top_type(top_normal_form(t)), t) << k;
    expect_witness(top_normal_form(t), t);
  }
}

TEST(Pencil, DoubleRootRankSeparatesT2FromT3) {
  auto c2 = classify_top(M_("x^2+z^2", "y*z"));
  auto c3 = classify_top(M_("x^2+y^2", "z^2"));
  EXPECT_EQ(c2.type, TopType::T2);
  EXPECT_EQ(c3.type, TopType::T3);
  ASSERT_EQ(c2.profile.ranks_at_roots.size(), 2u);
  bool r2 = false, r1 = false;
  for (auto [m, r] : c2.profile.ranks_at_roots) r2 |= (m == 2 && r == 2);
  for (auto [m, r] : c3.profile.ranks_at_roots) r1 |= (m == 2 && r == 1);
  EXPECT_TRUE(r2);
  EXPECT_TRUE(r1);
}

TEST(Pencil, TripleRootAndDegenerate) {
  EXPECT_EQ(top_type(M_("x^2+2*y*z", "y^2+2*x*y")), TopType::T4);
  EXPECT_EQ(top_type(M_("x^2+2*y*z", "z^2")), TopType::T5);
  EXPECT_EQ(top_type(M_("x*y", "y^2")), TopType::T8);
  EXPECT_EQ(top_type(M_("x^2", "y^2")), TopType::T6);
  EXPECT_EQ(top_type(M_("x*y", "y*z")), TopType::T7);
}

TEST(Pencil, SwapsAndProportionalComponents) {
  EXPECT_EQ(top_type(M_("y", "x^2+y^2")), TopType::T13);
  EXPECT_EQ(top_type(M_("x^2+y^2", "2*x^2+2*y^2")), TopType::T15);
  EXPECT_EQ(top_type(M_("x", "3*x")), TopType::T20);
  EXPECT_EQ(top_type(M_("0", "x^2")), TopType::T18);
  expect_witness(M_("y", "x^2+y^2"), TopType::T13);
  expect_witness(M_("x^2+y^2", "2*x^2+2*y^2"), TopType::T15);
}

TEST(Pencil, IrreducibleCubicUsesCubicLevel) {
  // det = lambda^3 + lambda^2 mu - 2 lambda mu^2 - mu^3, no Gaussian root
  QuadMap F = M_("x^2+y^2+z^2", "2*x*y+2*y*z+z^2");
  EXPECT_EQ(pencil_cubic(F), P_("lambda^3+lambda^2*mu-2*lambda*mu^2-mu^3"));
  auto c = classify_top(F);
  ASSERT_EQ(c.type, TopType::T1);
  ASSERT_TRUE(c.witness.has_value()) << c.note;
  EXPECT_TRUE(c.ctx.has_cubic());
  EXPECT_EQ(c.witness->apply(F), top_normal_form(TopType::T1));
  Policy strict;
  strict.allow_cubic = false;
  auto c2 = classify_top(F, strict);
  EXPECT_EQ(c2.type, TopType::T1);
  EXPECT_FALSE(c2.witness.has_value());
  EXPECT_FALSE(c2.note.empty());
}

TEST(Pencil, T3PrenormalIsRadicalFree) {
  rnd::Rng rng(7);
  for (int n = 0; n < 50; ++n) {
    QuadMap F = conjugate(top_normal_form(TopType::T3), rng.linear_source(), rng.linear_target());
    F = compose_target(rng.linear_target(), F);
    auto w = t3_prenormal(F);
    QuadMap G = w.apply(F);
    for (int k = 0; k < 10; ++k) {
      EXPECT_TRUE(G.a[k].is_base());
      EXPECT_TRUE(G.b[k].is_base());
    }
    for (int k : {2, 4, 5, 6, 7, 8, 9}) EXPECT_TRUE(G.a[k].is_zero()) << G.str();
    for (int k = 0; k < 10; ++k)
      if (k != 5) EXPECT_TRUE(G.b[k].is_zero()) << G.str();
  }
}

TEST(Pencil, LinearConjugatesKeepTypeAndVerify) {
  rnd::Rng rng(20261016);
  for (int k = 1; k <= 21; ++k) {
    TopType t = static_cast<TopType>(k);
    for (int n = 0; n < 50; ++n) {
      QuadMap N = top_normal_form(t);
      TargetAut psi = rng.linear_target(3, n % 7 == 6);
      if (N.deg_f() != N.deg_g()) psi.N[0][1] = psi.N[1][0] = 0;
      if (psi.det().is_zero()) psi = TargetAut::identity();
      QuadMap F = conjugate(N, rng.linear_source(3, n % 5 == 4), psi);
      ASSERT_EQ(top_type(F), t) << F.str();
      expect_witness(F, t);
    }
  }
}
