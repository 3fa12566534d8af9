#pragma once

#include <functional>
#include <sstream>
#include <string>

#include "qmap/census.hpp"
#include "qmap/expr.hpp"
#include "qmap/random.hpp"

namespace qmap::props {

struct Outcome {
  int cases = 0, failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

inline Outcome run(int cases, const std::function<std::string(int)>& one) {
  Outcome o;
  for (int i = 0; i < cases; ++i) {
    std::string err = one(i);
    ++o.cases;
    if (!err.empty() && o.failures++ == 0) o.first_failure = "case " + std::to_string(i) + ": " + err;
  }
  return o;
}

// elements of Q(i)(sqrt 2, sqrt 3) with small Gaussian-rational coordinates
struct TowerSampler {
  rnd::Rng rng;
  TowerCtx ctx;
  TowerElem s2, s3;
  explicit TowerSampler(unsigned seed) : rng(seed) {
    s2 = parse_literal("sqrt(2)", ctx);
    s3 = parse_literal("sqrt(3)", ctx);
  }
  TowerElem base() {
    long den = rng.small(1, 4);
    return TowerElem(Rational(rng.small(-5, 5), den), Rational(rng.small(-5, 5), den));
  }
  TowerElem elem() { return base() + base() * s2 + base() * s3 + base() * s2 * s3; }
};

inline Poly random_poly(rnd::Rng& rng, int max_deg, int terms, bool complex = true) {
  Poly p;
  for (int k = 0; k < terms; ++k) {
    Exp e{};
    int budget = (int)rng.small(0, max_deg);
    for (Var v : {X, Y, Z}) {
      int d = (int)rng.small(0, budget);
      e[v] = (uint8_t)d;
      budget -= d;
    }
    p += Poly::monomial(rng.gaussian(4, complex), e);
  }
  return p;
}

inline Poly random_upoly(rnd::Rng& rng, int deg) {
  Poly p;
  for (int k = 0; k <= deg; ++k) p += Poly(rng.gaussian(3, k % 2 == 0)) * Poly::var(T).pow(k);
  return p;
}

inline Outcome field_axioms(int cases, unsigned seed = 1) {
  TowerSampler s(seed);
  return run(cases, [&](int) -> std::string {
    TowerElem a = s.elem(), b = s.elem(), c = s.elem();
    if ((a + b) + c != a + (b + c)) return "additive associativity";
    if ((a * b) * c != a * (b * c)) return "multiplicative associativity";
    if (a * b != b * a || a + b != b + a) return "commutativity";
    if (a * (b + c) != a * b + a * c) return "distributivity";
    if (!(a - a).is_zero()) return "additive inverse";
    if (!a.is_zero() && a * a.inv() != TowerElem(1)) return "inverse of " + a.str();
    if (!b.is_zero() && (a / b) * b != a) return "division";
    return "";
  });
}

// Res(f, g) = 0 exactly when gcd(f, g) is nonconstant
inline Outcome resultant_gcd(int cases, unsigned seed = 2) {
  rnd::Rng rng(seed);
  return run(cases, [&](int i) -> std::string {
    Poly f = random_upoly(rng, (int)rng.small(1, 3)), g = random_upoly(rng, (int)rng.small(1, 3));
    if (i % 3 == 0) {
      Poly common = Poly::var(T) - Poly(rng.gaussian(3, true));
      f *= common;
      g *= common;
    }
    if (f.degree(T) < 1 || g.degree(T) < 1) return "";
    bool res_zero = resultant(f, g, T).is_zero();
    bool common = gcd(UPoly::from(f, T), UPoly::from(g, T)).degree() > 0;
    if (res_zero != common) return "f=" + f.str() + " g=" + g.str();
    return "";
  });
}

inline Outcome substitution_homomorphism(int cases, unsigned seed = 3) {
  rnd::Rng rng(seed);
  return run(cases, [&](int) -> std::string {
    Poly f = random_poly(rng, 2, 4), g = random_poly(rng, 2, 4), h = random_poly(rng, 2, 3);
    std::map<Var, Poly> a = {{X, random_poly(rng, 1, 3)}, {Y, random_poly(rng, 1, 3)}, {Z, random_poly(rng, 2, 2)}};
    if (subst(f * g + h, a) != subst(f, a) * subst(g, a) + subst(h, a)) return "f=" + f.str() + " g=" + g.str();
    if (subst(f - g, a) != subst(f, a) - subst(g, a)) return "difference";
    return "";
  });
}

// minors(Psi o F o Phi) = det N * (Cauchy-Binet transform of minors(F) o Phi) for linear parts M, N
inline Outcome minor_covariance(int cases, unsigned seed = 4) {
  rnd::Rng rng(seed);
  return run(cases, [&](int) -> std::string {
    QuadMap F;
    for (auto& c : F.a) c = rng.gaussian(3, true);
    for (auto& c : F.b) c = rng.gaussian(3, true);
    SourceAut phi = rng.affine_source(3, true);
    TargetAut psi = rng.affine_target(3, true);
    Minors m = minors(F), mc = minors(conjugate(F, phi, psi));
    auto ph = phi.polys();
    std::map<Var, Poly> at = {{X, ph[0]}, {Y, ph[1]}, {Z, ph[2]}};
    Poly mab[3][3];
    mab[0][1] = subst(m.xy, at);
    mab[0][2] = subst(m.xz, at);
    mab[1][2] = subst(m.yz, at);
    auto transformed = [&](int i, int j) {
      Poly s;
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
          s += mab[a][b].scaled(phi.M[a][i] * phi.M[b][j] - phi.M[a][j] * phi.M[b][i]);
      return s.scaled(psi.det());
    };
    if (mc.xy != transformed(0, 1) || mc.xz != transformed(0, 2) || mc.yz != transformed(1, 2)) return F.str();
    return "";
  });
}

// node parameters of the family curves come in pairs
inline Outcome census_evenness(int cases, unsigned seed = 5) {
  rnd::Rng rng(seed);
  return run(cases, [&](int i) -> std::string {
    if (i % 2 == 0) {
      TowerElem A, B;
      do A = rng.gaussian(5, true); while (A.is_zero());
      do B = rng.gaussian(5, i % 4 == 0); while (B.is_zero());
      if (distinct_root_count(UPoly::from(hn_poly(A, B), T)) % 2) return "Family1 " + A.str() + ", " + B.str();
    } else {
      TowerElem A = rng.gaussian(5, true);
      Poly t = Poly::var(T), hn = t * t * (t + Poly(A)).pow(2) + Poly(1);
      if (distinct_root_count(UPoly::from(hn, T)) % 2) return "Family8 " + A.str();
    }
    return "";
  });
}

inline Outcome parser_round_trip(int cases, unsigned seed = 6) {
  rnd::Rng rng(seed);
  TowerSampler s(seed);
  return run(cases, [&](int i) -> std::string {
    Poly p = random_poly(rng, 3, 5);
    if (i % 2) p = p.scaled(s.elem());
    TowerCtx ctx = s.ctx;
    if (parse_poly(p.str(), ctx) != p) return p.str();
    TowerElem e = s.elem();
    if (parse_literal(to_literal(e), ctx) != e) return to_literal(e);
    return "";
  });
}

}  // namespace qmap::props
