#include <gtest/gtest.h>

#include "qmap/expr.hpp"
#include "qmap/maps.hpp"

using namespace qmap;

namespace {
Poly P_(const std::string& s) { return parse_poly(s); }
QuadMap M_(const std::string& f, const std::string& g) { return parse_map(f, g); }
TowerCtx g_ctx;
SourceAut src(const std::string& x, const std::string& y, const std::string& z) { return parse_source(x, y, z, g_ctx); }
TargetAut tgt(const std::string& p, const std::string& q) { return parse_target(p, q, g_ctx); }
QuadMap FAB(const std::string& a, const std::string& b) {
  return M_("x^2+(" + b + ")*z^2+2*(" + a + ")*y", "(" + a + ")*y^2+(" + b + ")*z^2+2*x+2*(" + b + ")*z");
}
}  // namespace

TEST(Maps, CoefficientOrder) {
  QuadMap F = M_("x^2+2*x*y+3*x*z+4*y^2+5*y*z+6*z^2+7*x+8*y+9*z+10", "0");
  for (int k = 0; k < 10; ++k) EXPECT_EQ(F.a[k], TowerElem(k + 1));
  EXPECT_THROW(M_("x^3", "y"), ParseError);
  EXPECT_THROW(M_("x*p", "y"), ParseError);
}

TEST(Maps, MinorsOfF7) {
  auto m = minors(M_("x^2+z^2", "y^2+z^2"));
  EXPECT_EQ(m.xy, P_("4*x*y"));
  EXPECT_EQ(m.xz, P_("4*x*z"));
  EXPECT_EQ(m.yz, P_("-4*y*z"));
}

TEST(Maps, MinorsOfLinearMap) {
  auto m = minors(M_("x", "y"));
  EXPECT_EQ(m.xy, Poly(1));
  EXPECT_TRUE(m.xz.is_zero());
  EXPECT_TRUE(m.yz.is_zero());
}

TEST(Maps, MinorsVanishOnF8Curve) {
  auto m = minors(M_("x^2+z^2+2*y", "y*z+x"));
  for (long k : {2L, 3L, -5L, 7L}) {
    TowerElem t(k);
    for (const Poly* mp : {&m.xy, &m.xz, &m.yz}) {
      Poly v = mp->eval(X, t.inv()).eval(Y, t * t).eval(Z, t);
      EXPECT_TRUE(v.is_zero());
    }
  }
}

TEST(Maps, ConjugateExceptionalEquivalence) {
  QuadMap got = conjugate(FAB("-1/4", "1/4"), src("-z", "-y+1", "-x"), tgt("4*p+2", "4*p-4*q+1"));
  EXPECT_EQ(got, FAB("1", "4"));
}

TEST(Maps, ConjugateIdentity) {
  QuadMap F = M_("x^2+y*z+3*x", "z^2-i*y+1");
  EXPECT_EQ(conjugate(F, SourceAut::identity(), TargetAut::identity()), F);
}

TEST(Maps, SymbolicParameterIdentity) {
  // (-p+1/2, q-p+1/4) o (x^2+z^2+y, y^2+z^2+beta*z) o (i*z, -y+1/2, i*x)
  Poly f = P_("x^2+z^2+y"), g = P_("y^2+z^2+beta*z");
  std::map<Var, Poly> s{{X, P_("i*z")}, {Y, P_("-y+1/2")}, {Z, P_("i*x")}};
  Poly f1 = subst(f, s), g1 = subst(g, s);
  std::map<Var, Poly> t{{P, f1}, {Q, g1}};
  EXPECT_EQ(subst(P_("-p+1/2"), t), P_("x^2+z^2+y"));
  EXPECT_EQ(subst(P_("q-p+1/4"), t), P_("y^2+z^2+i*beta*x"));
}

TEST(Maps, TopPart) {
  EXPECT_EQ(top_part(M_("x^2+z^2+y", "y^2+z^2+x+z")), M_("x^2+z^2", "y^2+z^2"));
  EXPECT_EQ(top_part(M_("x*y+z", "y^2+x")), M_("x*y", "y^2"));
  EXPECT_EQ(top_part(M_("x", "0")), M_("x", "0"));
  EXPECT_EQ(top_part(M_("x+1", "3")), M_("x", "3"));
}

TEST(Maps, VerifyWitness) {
  WitnessChain chain;
  chain.source(src("-z", "-y+1", "-x"), "swap and translate");
  chain.target(tgt("4*p+2", "4*p-4*q+1"), "target");
  // chain maps G to F, so it witnesses G = Psi o F o Phi
  QuadMap F = FAB("1", "4"), G = FAB("-1/4", "1/4");
  EXPECT_EQ(chain.apply(G), F);
  EXPECT_TRUE(verify_witness(G, F, chain).ok);
  EXPECT_TRUE(verify_witness(F, F, WitnessChain()).ok);

  WitnessChain bad;
  bad.source(src("-z", "-y+2", "-x"), "perturbed");
  bad.target(tgt("4*p+2", "4*p-4*q+1"), "target");
  auto chk = verify_witness(G, F, bad);
  EXPECT_FALSE(chk.ok);
  EXPECT_FALSE(chk.diff.empty());
}

TEST(Maps, AutomorphismAlgebra) {
  SourceAut a = src("x+2*y-z+1", "y+i*z", "3*x-z+1/2");
  SourceAut ai = a.inverse();
  EXPECT_EQ(compose(a, ai), SourceAut::identity());
  EXPECT_EQ(compose(ai, a), SourceAut::identity());
  TargetAut b = tgt("2*p-q+1", "p+i");
  EXPECT_EQ(compose(b, b.inverse()), TargetAut::identity());
  EXPECT_THROW(src("x+y", "x+y", "z"), std::invalid_argument);
  EXPECT_THROW(src("x^2", "y", "z"), std::invalid_argument);
}

TEST(Maps, PolyWitnessApplication) {
  PolyWitness w;
  w.kind = PolyWitness::Source;
  w.role = PolyWitness::PolynomialHomeomorphism;
  w.source_map = {P_("x-z^2"), P_("y+2*x*z-z^3"), P_("z")};
  auto r = apply_poly_witness({P_("x^2+y*z"), P_("z^2+x")}, w);
  EXPECT_EQ(r.first, P_("x^2+y*z"));
  EXPECT_EQ(r.second, P_("x"));
  w.kind = PolyWitness::Target;
  w.target_map = {P_("q"), P_("p-q^2")};
  r = apply_poly_witness(r, w);
  EXPECT_EQ(r.first, P_("x"));
  EXPECT_EQ(r.second, P_("y*z"));
}
