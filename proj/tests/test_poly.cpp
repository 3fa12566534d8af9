#include <gtest/gtest.h>

#include "qmap/poly.hpp"

using namespace qmap;

namespace {
Poly v(Var x) { return Poly::var(x); }
TowerElem q(long n, long d = 1) { return TowerElem(Rational(n, d)); }

Poly Hc() {
  Poly t = v(T), a = v(A), b = v(B);
  return b * t.pow(3) * (t + 1).pow(3) + t.pow(3) - a * (t + 1).pow(3);
}
Poly Hn() {
  Poly t = v(T), a = v(A), b = v(B);
  return (t + 1).pow(4) * (b * t * t + a).pow(2) + Poly(2) * t * t * (t + 1).pow(2) * (b * t * t - a) + t.pow(4);
}
Poly H0() {
  Poly a = v(A), b = v(B);
  return (a + b).pow(4) + (a - 1).pow(4) + (b + 1).pow(4) - a.pow(4) - b.pow(4) - 1 +
         Poly(124) * a * b * (a - b + 1);
}
Poly at(const Poly& f, const TowerElem& a, const TowerElem& b) { return f.eval(A, a).eval(B, b); }
}  // namespace

TEST(Poly, SubstituteCurveIntoComponent) {
  // components of phi(t) = (t/(t+1), (t+1)/t, t) multiplied through by t(t+1)
  Poly t = v(T);
  Poly f = v(X) * v(X) + v(Z) * v(Z) + v(Y);
  Poly g = substitute(f.with_ring(kXYZ), {{X, t}, {Y, (t + 1) * (t + 1)}, {Z, t * (t + 1)}});
  Poly expect = t * t + (t + 1) * (t + 1) + t * t * (t + 1) * (t + 1);
  EXPECT_EQ(g, expect);
}

TEST(Poly, SubstituteSwap) {
  Poly p = v(P).with_ring(kPQ);
  EXPECT_EQ(substitute(p, {{P, v(Q)}, {Q, v(P)}}), v(Q));
  EXPECT_THROW(substitute(v(X), {{Y, v(Z)}}), RingMismatch);
}

TEST(Poly, SubstituteParamsIntoHc) {
  Poly h = substitute(Hc(), {{A, Poly(q(1, 16))}, {B, Poly(q(-1, 16))}});
  EXPECT_EQ(h.used(), bit(T));
  EXPECT_EQ(h.degree(T), 6);
  EXPECT_GT(gcd_univar(h, h.derivative(T), T).degree(T), 0);
}

TEST(Poly, ResultantIdentities) {
  Poly a = v(A), b = v(B);
  EXPECT_EQ(resultant(Hc(), Hc().derivative(T), T), Poly(-729) * a * a * b.pow(3) * H0());
  EXPECT_EQ(resultant(Hn(), Hn().derivative(T), T), Poly(16777216) * a.pow(8) * b.pow(10) * H0());
  EXPECT_EQ(resultant(Hc(), Hn(), T), a.pow(4) * b.pow(4) * H0() * H0());
}

TEST(Poly, ResultantSmall) {
  Poly t = v(T), a = v(A);
  EXPECT_EQ(resultant(t * t - a, t.pow(3) - a, T), a * a - a.pow(3));
  // 2x2 Sylvester [[1,0],[1,-1]] has determinant -1
  EXPECT_EQ(resultant(t, t - 1, T), Poly(-1));
  EXPECT_EQ(resultant(t - 1, t, T), Poly(1));
}

TEST(Poly, Gcd) {
  Poly t = v(T);
  EXPECT_EQ(gcd_univar(t.pow(4) + 1, Poly(4) * t.pow(3), T), Poly(1));
  Poly hc2 = Poly(6) * t * t + Poly(3) * t + Poly(q(3, 8));
  EXPECT_EQ(gcd_univar(hc2, hc2.derivative(T), T), t + Poly(q(1, 4)));
  EXPECT_EQ(gcd_univar(at(Hc(), 1, 1), at(Hn(), 1, 1), T), Poly(1));
  EXPECT_THROW(gcd_univar(Hc(), t, T), NotUnivariate);
}

TEST(Poly, SquarefreeProfile) {
  Poly t = v(T);
  using Prof = std::vector<std::pair<int, int>>;
  EXPECT_EQ(squarefree_profile(t.pow(4) + 1, T), (Prof{{1, 4}}));
  EXPECT_EQ(squarefree_profile(Poly(6) * t * t + Poly(3) * t + Poly(q(3, 8)), T), (Prof{{2, 1}}));
  EXPECT_EQ(squarefree_profile(at(Hc(), q(1, 16), q(-1, 16)), T), (Prof{{1, 4}, {2, 1}}));
  EXPECT_EQ(squarefree_profile((t - 1) * (t - 2).pow(3) * (t + 5).pow(3), T), (Prof{{1, 1}, {3, 2}}));
}

TEST(Poly, RootsInTower) {
  Poly y = v(Y), t = v(T);
  auto r = roots_in_tower(y * y - 1, Y, TowerCtx());
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_EQ(r.ctx.depth(), 0);
  EXPECT_EQ(r.roots[0].first * r.roots[1].first, TowerElem(-1));

  auto g = roots_in_tower(t * t + t - 1, T, TowerCtx());
  ASSERT_EQ(g.roots.size(), 2u);
  EXPECT_EQ(g.ctx.depth(), 1);
  EXPECT_EQ(g.ctx.top()->radicand, TowerElem(5));
  for (auto& [x, m] : g.roots) EXPECT_TRUE((x * x + x - 1).is_zero());

  auto d = roots_in_tower((t - 2) * (t - 2), T, TowerCtx());
  ASSERT_EQ(d.roots.size(), 1u);
  EXPECT_EQ(d.roots[0].first, TowerElem(2));
  EXPECT_EQ(d.roots[0].second, 2);

  EXPECT_THROW(roots_in_tower(t.pow(3) - 2, T, TowerCtx()), DegreeUnsupported);
  auto split = roots_in_tower((t - 1) * (t * t - 3), T, TowerCtx());
  EXPECT_EQ(split.roots.size(), 3u);
}

TEST(Poly, DivideExact) {
  Poly a = v(A), b = v(B);
  auto qo = divide_exact((a + b) * (a - b * b), a - b * b);
  ASSERT_TRUE(qo);
  EXPECT_EQ(*qo, a + b);
  EXPECT_FALSE(divide_exact(a * a + 1, a + b));
}

TEST(Poly, StrReadable) {
  Poly x = v(X), y = v(Y);
  EXPECT_EQ((x * x + Poly(2) * y - 3).str(), "x^2+2*y-3");
  EXPECT_EQ((x.scaled(TowerElem(1, 1))).str(), "(1+i)*x");
}
