#include "reducer.hpp"

namespace qmap::detail {

namespace {

TowerElem half(const TowerElem& e) { return e / 2; }
TowerElem fr(long n, long d) { return TowerElem(Rational(n, d)); }

AffineClass disc(Reducer& r, int k) {
  r.known = AffineClass::discrete(k);
  return *r.known;
}

// (x^2+z^2+y, y^2+z^2+alpha x+beta z) after the leading scale
AffineClass t1_scaled(Reducer& r) {
  for (int guard = 0; guard < 2; ++guard) {
    TowerElem al = r.b(7), be = r.b(9);
    if (!al.is_zero() && !be.is_zero()) {
      TowerElem ai = al.inv();
      TowerElem A = ai * ai, B = be * be * ai * ai;
      r.src(vx() * half(al), vy() * fr(1, 2), vz() * half(be), "scale to the two-parameter form");
      r.tgt(vp() * (A * 4), vq() * (A * 4), "scale to the two-parameter form");
      if (!h0(A, B).is_zero()) return AffineClass::family(AffineClass::Family1, {A, B});
      if (!is_exceptional_pair(A, B)) return AffineClass::family(AffineClass::Family2, {A, B});
      if (A == TowerElem(-4)) {
        r.src(vy(), vx(), -vz() - 1, "exceptional pair (-4,-1) to (-1/4,1/4)");
        r.tgt(vq() * fr(-1, 4) + fr(1, 4), vp() * fr(-1, 4) - fr(1, 4),
              "exceptional pair (-4,-1) to (-1/4,1/4)");
      }
      if (r.a(8) == TowerElem(fr(-1, 2))) {
        r.src(-vz(), -vy() + 1, -vx(), "exceptional pair (-1/4,1/4) to (1,4)");
        r.tgt(vp() * 4 + 2, vp() * 4 - vq() * 4 + 1, "exceptional pair (-1/4,1/4) to (1,4)");
      }
      r.src(vx() * 2, vy() * 2, vz(), "exceptional pair to representative");
      r.tgt(vp() * fr(1, 4), vq() * fr(1, 4), "exceptional pair to representative");
      r.kill_constants();
      return disc(r, 3);
    }
    if (!al.is_zero()) {
      TowerElem A = al.inv() * al.inv();
      r.src(vx() * half(al), vy() * fr(1, 2), vz() * half(al), "scale to the one-parameter form");
      r.tgt(vp() * (A * 4), vq() * (A * 4), "scale to the one-parameter form");
      if (A.is_one()) return disc(r, 5);
      return AffineClass::family(AffineClass::Family4, {A});
    }
    if (be.is_zero()) break;
    r.src(TowerElem::i() * vz(), -vy() + fr(1, 2), TowerElem::i() * vx(), "move the z term to x");
    r.tgt(-vp() + fr(1, 2), vq() - vp() + fr(1, 4), "move the z term to x");
  }
  r.src(vx() * fr(1, 2), vy() * fr(1, 2), vz() * fr(1, 2), "scale");
  r.tgt(vp() * 4, vq() * 4, "scale");
  return disc(r, 6);
}

}  // namespace

AffineClass recipe_t1(Reducer& r) {
  r.src(vx() - half(r.a(7)), vy() - half(r.b(8)), vz() - half(r.a(9)), "complete squares");
  r.kill_constants();
  if (r.a(8).is_zero()) {
    TowerElem al = r.b(7), be = r.b(9);
    if (!al.is_zero()) {
      TowerElem a2 = (al * al).inv(), c = be * be * a2 / 4;
      r.src(vy() * al, vx() * al, vz() * al - half(be), "exchange components");
      r.tgt(vq() * a2 + c, vp() * a2 - c, "exchange components");
    } else if (!be.is_zero()) {
      TowerElem b2 = (be * be).inv();
      r.src(vz() * be, TowerElem::i() * be * vx(), -vy() * be, "rotate the linear term into f");
      r.tgt((vp() - vq()) * b2, vp() * b2, "rotate the linear term into f");
    } else {
      return disc(r, 7);
    }
  }
  TowerElem s = r.a(8);
  if (!s.is_one()) {
    r.src(vx() * s, vy() * s, vz() * s, "normalize the y term");
    r.tgt(vp() * (s * s).inv(), vq() * (s * s).inv(), "normalize the y term");
  }
  return t1_scaled(r);
}

AffineClass recipe_t2(Reducer& r) {
  r.src(vx() - half(r.a(7)), vy() - r.b(9), vz() - half(r.a(9)), "translate");
  r.kill_constants();
  TowerElem a8 = r.a(8), b7 = r.b(7), b8 = r.b(8);
  if (!a8.is_zero() && !b7.is_zero()) {
    TowerElem s = r.root(a8 * b7 / 2);
    r.src(vx() * s, vy() * b7, vz() * s, "scale");
    r.tgt(vp() * (a8 * b7 / 2).inv(), vq() * (b7 * s).inv(), "scale");
    TowerElem A = r.b(8);
    if (A.pow(4) != TowerElem(-16)) return AffineClass::family(AffineClass::Family8, {A});
    r.known = AffineClass::discrete(9);
    for (int k = 0; k < 4 && r.b(8) * r.b(8) != TowerElem(0, 4); ++k) {
      r.src(TowerElem::i() * vx(), -vy(), -TowerElem::i() * vz(), "multiply the parameter by i");
      r.tgt(-vp(), -TowerElem::i() * vq(), "multiply the parameter by i");
    }
    return *r.known;
  }
  if (b7.is_zero()) {
    if (!a8.is_zero() && !b8.is_zero()) {
      r.src(vx() * b8, vy() * (b8 * b8 / a8), vz() * b8, "scale");
      r.tgt(vp() * (b8 * b8).inv(), vq() * (a8 / b8.pow(3)), "scale");
      r.src(vx(), vy() * 2, vz(), "scale");
      r.tgt(vp(), vq() * fr(1, 2), "scale");
      return disc(r, 10);
    }
    if (!b8.is_zero()) {
      r.src(vx() * b8, vy(), vz() * b8, "scale");
      r.tgt(vp() * (b8 * b8).inv(), vq() * b8.inv(), "scale");
      return disc(r, 12);
    }
    if (!a8.is_zero()) {
      r.src(vx(), vy() * (TowerElem(2) / a8), vz(), "scale");
      r.tgt(vp(), vq() * half(a8), "scale");
      return disc(r, 13);
    }
    return disc(r, 15);
  }
  if (!b8.is_zero()) {
    r.src(vx() * b8, vy() * b7, vz() * b8, "scale");
    r.tgt(vp() * (b8 * b8).inv(), vq() * (b7 * b8).inv(), "scale");
    return disc(r, 11);
  }
  r.src(vx(), vy() * b7, vz(), "scale");
  r.tgt(vp(), vq() * b7.inv(), "scale");
  return disc(r, 14);
}

namespace {

// binary form q11 x^2 + q12 xy + q22 y^2 at (u0, u1)
TowerElem bin_eval(const TowerElem q[3], const TowerElem& u0, const TowerElem& u1) {
  return q[0] * u0 * u0 + q[1] * u0 * u1 + q[2] * u1 * u1;
}

}  // namespace

AffineClass recipe_t3(Reducer& r) {
  TowerElem c = r.b(6);
  r.src(vx(), vy(), vz() - r.b(9) / (c * 2), "translate z");
  {
    // gradient of the binary form at the translation: [2q11 q12; q12 2q22] (u, v) = -(a7, a8)
    TowerElem m11 = r.a(1) * 2, m12 = r.a(2), m22 = r.a(4) * 2;
    TowerElem det = m11 * m22 - m12 * m12;
    TowerElem u = (-r.a(7) * m22 + r.a(8) * m12) / det;
    TowerElem v = (-r.a(8) * m11 + r.a(7) * m12) / det;
    r.src(vx() + u, vy() + v, vz(), "center the binary form");
  }
  r.kill_constants();
  r.tgt(vp(), vq() * c.inv(), "normalize z^2");
  TowerElem q[3] = {r.a(1), r.a(2), r.a(4)};
  TowerElem l0 = r.b(7), l1 = r.b(8), a9 = r.a(9);
  if (!l0.is_zero() || !l1.is_zero()) {
    // w spans the kernel of the linear term
    TowerElem w0 = l1, w1 = -l0;
    TowerElem gam = bin_eval(q, w0, w1);
    if (!gam.is_zero()) {
      // u: l(u) = 1 and u orthogonal to w for the binary form
      TowerElem s0 = q[0] * w0 * 2 + q[1] * w1, s1 = q[1] * w0 + q[2] * w1 * 2;
      TowerElem det = l0 * s1 - l1 * s0;
      TowerElem u0 = s1 / det, u1 = -s0 / det;
      TowerElem al = bin_eval(q, u0, u1);
      r.src(vx() * u0 + vy() * w0, vx() * u1 + vy() * w1, vz(), "diagonalize along the linear term");
      if (!a9.is_zero()) {
        r.known = AffineClass::discrete(16);
        TowerElem cc = r.cube_root(a9 / (al * 8));
        TowerElem c2 = cc * cc, c4 = c2 * c2;
        TowerElem b = r.root(al * c4 * 4 / gam);
        r.src(vx() * (c2 * 2), vy() * b, vz() * cc, "scale");
        r.tgt(vp() * (al * c4 * 4).inv(), vq() * c2.inv(), "scale");
        return *r.known;
      }
      r.known = AffineClass::discrete(17);
      TowerElem b = r.root(al / gam) * 2;
      r.src(vx() * 2, vy() * b, vz(), "scale");
      r.tgt(vp() * (al * 4).inv(), vq(), "scale");
      return *r.known;
    }
    // the binary form factors as l * m
    TowerElem m0, m1;
    if (!l0.is_zero()) {
      m0 = q[0] / l0;
      m1 = (q[1] - m0 * l1) / l0;
    } else {
      m1 = q[2] / l1;
      m0 = q[1] / l1;
    }
    r.src(SourceAut(source_from_forms({l0, l1, 0}, {m0, m1, 0}, {0, 0, 1})), "split the binary form");
    if (!a9.is_zero()) {
      r.src(vx() * 2, vy() * half(a9), vz(), "scale");
      r.tgt(vp() * a9.inv(), vq(), "scale");
      return disc(r, 18);
    }
    r.src(vx() * 2, vy() * fr(1, 2), vz(), "scale");
    return disc(r, 19);
  }
  // diagonalize the binary form over the base field
  TowerElem u0 = 1, u1 = 0;
  if (q[0].is_zero()) {
    if (!q[2].is_zero()) {
      u0 = 0;
      u1 = 1;
    } else {
      u1 = 1;
    }
  }
  TowerElem s0 = q[0] * u0 * 2 + q[1] * u1, s1 = q[1] * u0 + q[2] * u1 * 2;
  TowerElem w0 = -s1, w1 = s0;
  TowerElem al = bin_eval(q, u0, u1), gam = bin_eval(q, w0, w1);
  r.src(vx() * u0 + vy() * w0, vx() * u1 + vy() * w1, vz(), "diagonalize the binary form");
  if (!a9.is_zero()) {
    r.known = AffineClass::discrete(20);
    TowerElem b = r.root(al / gam), cc = al * 2 / a9;
    r.src(vx(), vy() * b, vz() * cc, "scale");
    r.tgt(vp() * al.inv(), vq() * (cc * cc).inv(), "scale");
    return *r.known;
  }
  r.known = AffineClass::discrete(21);
  TowerElem b = r.root(al / gam);
  r.src(vx(), vy() * b, vz(), "scale");
  r.tgt(vp() * al.inv(), vq(), "scale");
  return *r.known;
}

AffineClass recipe_t4(Reducer& r) {
  r.src(vx() - half(r.a(7)), vy() - half(r.a(9)), vz() - half(r.a(8)), "translate");
  r.kill_constants();
  TowerElem b7 = half(r.b(7)), b8 = half(r.b(8)), b9 = half(r.b(9));
  if (!b9.is_zero()) {
    r.src(vx() * b9, vy() * b9, vz() * b9, "scale");
    r.tgt(vp() * (b9 * b9).inv(), vq() * (b9 * b9).inv(), "scale");
    TowerElem A = b7 / b9, B = b8 / b9;
    TowerElem D = A * A * 4 + A * 12 - B * 16 + 3;
    if (!D.is_zero()) {
      r.known = AffineClass::discrete(22);
      TowerElem T = r.root(D / 3), S = (-A * 2 - 1 + T) / 4;
      TowerElem T2 = T * T, T3 = T2 * T;
      Poly R1 = vx() * T2 + vy() * ((T2 - T) / 2) + (S * S + A * S);
      Poly R2 = vy() * T + S;
      Poly R3 = vx() * (-(S + A) * T2) - vy() * (T * (A * T * 2 - T + 1) / 8) + vz() * T3 +
                S * (A * 2 - T2 + T) / 8;
      r.src(R1, R2, R3, "straighten the linear part");
      r.tgt((vp() - vq() * S) * (T2 * T2).inv(), vq() * T3.inv(), "straighten the linear part");
      r.kill_constants();
      return *r.known;
    }
    Poly R4 = -(vx() * 2 + vy()) * (A / 4) + vz() - (A * A * 4 + A * 3) / 32;
    r.src(vx() - A * A / 4, vy() - half(A), R4, "straighten the linear part");
    r.tgt(vp() + vq() * half(A), vq(), "straighten the linear part");
    r.kill_constants();
    return disc(r, 23);
  }
  if (!b7.is_zero()) {
    TowerElem i2 = (b7 * b7).inv();
    r.src(vx() * b7 - b8, vy() * b7, -(vx() * 2 + vy()) * half(b8) + vz() * b7, "straighten the linear part");
    r.tgt(vp() * i2 + vq() * (b8 / b7.pow(3)) + b8 * b8 * i2, vq() * i2 + b8 * 2 / b7, "straighten the linear part");
    r.kill_constants();
    return disc(r, 24);
  }
  if (!b8.is_zero()) {
    r.src(vx() * b8, vy() * b8, vz() * b8, "scale");
    r.tgt(vp() * (b8 * b8).inv(), vq() * (b8 * b8).inv(), "scale");
    return disc(r, 25);
  }
  return disc(r, 26);
}

AffineClass recipe_t5(Reducer& r) {
  r.src(vx() - half(r.a(7)), vy() - half(r.a(9)), vz() - half(r.a(8)), "translate");
  r.kill_constants();
  TowerElem b7 = half(r.b(7)), b8 = half(r.b(8)), b9 = half(r.b(9));
  if (!b8.is_zero()) {
    r.src(vx() * b8, vy() * b8, vz() * b8, "scale");
    r.tgt(vp() * (b8 * b8).inv(), vq() * (b8 * b8).inv(), "scale");
    TowerElem c7 = b7 / b8, c9 = b9 / b8;
    TowerElem T = (c7 * c7 + c9 * 2) / 3;
    r.src(vx() + vz() * c7 - c7 * T, -vx() * c7 + vy() - vz() * (T * 2 - c9) + T * (T - c9), vz() - T,
          "absorb the x and z terms");
    r.tgt(vp() + vq() * T + T.pow(3) * 2, vq() + T * T * 3, "absorb the x and z terms");
    r.kill_constants();
    return disc(r, 27);
  }
  if (!b7.is_zero()) {
    r.src(vx() * b7 - vz() * b9, vx() * b9 + vy() * b7 - vz() * (b9 * b9 / (b7 * 2)), vz() * b7, "absorb the z term");
    r.tgt(vp() * (b7 * b7).inv(), vq() * (b7 * b7).inv(), "absorb the z term");
    r.kill_constants();
    return disc(r, 28);
  }
  if (!b9.is_zero()) {
    r.src(vx() * b9, vy() * b9, vz() * b9, "scale");
    r.tgt(vp() * (b9 * b9).inv(), vq() * (b9 * b9).inv(), "scale");
    return disc(r, 29);
  }
  return disc(r, 30);
}

AffineClass recipe_t6(Reducer& r) {
  TowerElem a9 = r.a(9), b9 = r.b(9);
  if (!a9.is_zero() && !b9.is_zero()) {
    r.src(vx(), vy(), vz() - vx() * (r.b(7) / b9) - vy() * (r.a(8) / a9), "shear z");
    r.src(vx() - half(r.a(7)), vy() - half(r.b(8)), vz(), "complete squares");
    r.kill_constants();
    r.known = AffineClass::discrete(31);
    TowerElem sa = r.root(a9), sb = r.root(b9);
    r.src(vx() * sa, vy() * sb, vz() * 2, "scale");
    r.tgt(vp() * a9.inv(), vq() * b9.inv(), "scale");
    return *r.known;
  }
  if (!a9.is_zero() || !b9.is_zero()) {
    if (a9.is_zero()) {
      r.src(vy(), vx(), vz(), "swap");
      r.tgt(vq(), vp(), "swap");
    }
    a9 = r.a(9);
    r.src(vx(), vy() - half(r.b(8)), (-vx() * r.a(7) - vy() * r.a(8) + vz() * 2) * a9.inv(), "absorb into z");
    r.kill_constants();
    TowerElem b7 = r.b(7);
    if (!b7.is_zero()) {
      r.src(vx() * b7, vy() * b7, vz() * (b7 * b7 / 2), "scale");
      r.tgt(vp() * (b7 * b7).inv(), vq() * (b7 * b7).inv(), "scale");
      return disc(r, 32);
    }
    r.src(vx(), vy(), vz() * fr(1, 2), "scale");
    return disc(r, 33);
  }
  r.src(vx() - half(r.a(7)), vy() - half(r.b(8)), vz(), "complete squares");
  r.kill_constants();
  TowerElem a8 = r.a(8), b7 = r.b(7);
  if (!a8.is_zero() && !b7.is_zero()) {
    r.known = AffineClass::discrete(34);
    TowerElem a = r.cube_root(a8 * a8 * b7 / 8);
    TowerElem b = a * a * 2 / a8;
    r.src(vx() * a, vy() * b, vz(), "scale");
    r.tgt(vp() * (a * a).inv(), vq() * (b * b).inv(), "scale");
    return *r.known;
  }
  if (a8.is_zero() && !b7.is_zero()) {
    r.src(vy(), vx(), vz(), "swap");
    r.tgt(vq(), vp(), "swap");
    a8 = r.a(8);
  }
  if (!a8.is_zero()) {
    TowerElem b = TowerElem(2) / a8;
    r.src(vx(), vy() * b, vz(), "scale");
    r.tgt(vp(), vq() * (b * b).inv(), "scale");
    return disc(r, 35);
  }
  return disc(r, 36);
}

AffineClass recipe_t7(Reducer& r) {
  r.src(vx() - r.a(8), vy() - r.a(7), vz() - r.b(8), "translate");
  r.kill_constants();
  TowerElem a9 = r.a(9), b7 = r.b(7), b9 = r.b(9);
  if (!a9.is_zero() && !b7.is_zero()) {
    r.known = AffineClass::discrete(37);
    TowerElem rr = r.root(a9), s = r.root(b7);
    r.src(vx() * rr, vy() * (rr * s), vz() * s, "scale");
    r.tgt(vp() * (a9 * s).inv(), vq() * (b7 * rr).inv(), "scale");
    TowerElem c = r.b(9);
    TowerElem i2 = TowerElem(0, 2);
    if (c * c + 4 != TowerElem(0)) {
      TowerElem T = r.root(c * c + 4);
      TowerElem S1 = (-c + T) / 2, S2 = (-c - T) / 2, T2 = T * T;
      r.src((-vx() + vz()) * T2.inv(), vy() * T + S1, (vx() * S1 - vz() * S2) * T2.inv(), "split the pencil");
      r.tgt(vp() * S2 + vq(), vp() * S1 + vq(), "split the pencil");
      r.kill_constants();
      return *r.known;
    }
    r.known = AffineClass::discrete(38);
    if (c == -i2) {
      r.src(-vx(), -vy(), vz(), "conjugate the root");
      r.tgt(vp(), -vq(), "conjugate the root");
    }
    r.src(vx(), vy() - TowerElem::i(), TowerElem::i() * vx() + vz(), "absorb the double member");
    r.tgt(vp(), -TowerElem::i() * vp() + vq(), "absorb the double member");
    r.kill_constants();
    return *r.known;
  }
  if (a9.is_zero() && !b7.is_zero()) {
    if (b9.is_zero()) {
      r.src(vz() * b7.inv(), vy(), vx() + vz(), "mix members");
      r.tgt(-vp() * b7 + vq(), vp() * b7, "mix members");
      return disc(r, 38);
    }
    r.src(vx() * b9.inv(), vy() * b9, (-vx() * b7 + vz()) * (b9 * b9).inv(), "mix members");
    r.tgt(vp(), vp() * b7 + vq() * b9, "mix members");
    return disc(r, 37);
  }
  if (!a9.is_zero()) {
    if (b9.is_zero()) {
      r.src(vx() * a9, vy(), vz(), "scale");
      r.tgt(vp() * a9.inv(), vq(), "scale");
      return disc(r, 38);
    }
    r.src(vx() + vz() * (a9 / b9), vy() * b9, vz(), "mix members");
    r.tgt((vp() - vq() * (a9 / b9)) * b9.inv(), vq() * b9.inv(), "mix members");
    return disc(r, 37);
  }
  if (!b9.is_zero()) {
    r.src(vx(), vy() * b9, vz(), "scale");
    r.tgt(vp() * b9.inv(), vq() * b9.inv(), "scale");
    return disc(r, 37);
  }
  return disc(r, 39);
}

AffineClass recipe_t8(Reducer& r) {
  if (!r.b(9).is_zero()) {
    r.src(SourceAut(source_from_forms({1, 0, 0}, {0, 1, 0}, {r.b(7), r.b(8), r.b(9)})), "absorb the linear part of g");
    r.src(vx() - r.a(8), vy(), vz(), "translate");
    r.kill_constants();
    TowerElem a7 = r.a(7), a9 = r.a(9);
    r.src(vx() + vy() * a9 - a7 * a9 * 2, vy() - a7, vy() * (a7 * 2) + vz() * 2, "absorb the x term");
    r.tgt(vp() - (vq() - a7 * a7) * a9, vq() - a7 * a7, "absorb the x term");
    r.kill_constants();
    return disc(r, 40);
  }
  if (!r.a(9).is_zero()) {
    TowerElem a9 = r.a(9), b8 = r.b(8);
    r.src(vx(), vy() - half(b8), (vx() * (-r.a(7) + half(b8)) - vy() * r.a(8) + vz()) * a9.inv(), "absorb into z");
    r.kill_constants();
    TowerElem b7 = r.b(7);
    if (!b7.is_zero()) {
      r.src(vx() * b7.inv(), vy(), vz() * b7.inv(), "scale");
      r.tgt(vp() * b7, vq(), "scale");
      return disc(r, 41);
    }
    return disc(r, 42);
  }
  r.src(vx() - r.a(8), vy() - r.a(7), vz(), "translate");
  r.kill_constants();
  TowerElem b7 = r.b(7), b8 = r.b(8);
  if (!b7.is_zero()) {
    TowerElem lam = b8 / (b7 * 3);
    r.src(vx() - lam * lam * b7 - vy() * lam, vy() - b8 / 3, vz(), "absorb the y term");
    r.tgt(vp() + vq() * lam, vq(), "absorb the y term");
    r.kill_constants();
    r.src(vx() * (TowerElem(2) / b7), vy(), vz(), "scale");
    r.tgt(vp() * half(b7), vq(), "scale");
    return disc(r, 43);
  }
  if (!b8.is_zero()) {
    r.src(vx() * half(b8), vy() * half(b8), vz(), "scale");
    TowerElem k = TowerElem(4) / (b8 * b8);
    r.tgt(vp() * k, vq() * k, "scale");
    return disc(r, 44);
  }
  return disc(r, 45);
}

namespace {

// f = x^2 + a8 y + a9 z: moves the linear term onto y; returns false when it is absent
bool linear_to_y(Reducer& r) {
  if (r.a(8).is_zero()) {
    if (r.a(9).is_zero()) return false;
    r.src(vx(), vz(), vy(), "swap y and z");
  }
  r.src(vx(), (vy() - vz() * r.a(9)) * r.a(8).inv(), vz(), "absorb the linear term");
  return true;
}

}  // namespace

AffineClass recipe_lower(Reducer& r, TopType t) {
  switch (t) {
    case TopType::T9:
    case TopType::T10:
      r.src(vx() - half(r.a(7)), vy() - r.a(9), vz() - r.a(8), "translate");
      r.kill_constants();
      return disc(r, t == TopType::T9 ? 46 : 47);
    case TopType::T11:
      r.src(vx() - half(r.a(7)), vy() - half(r.a(8)), vz() - half(r.a(9)), "complete squares");
      r.kill_constants();
      return disc(r, 48);
    case TopType::T12:
      r.src(vx() - half(r.a(7)), vy() - half(r.a(8)), vz(), "complete squares");
      r.tgt(vp() - vq() * r.a(9), vq(), "absorb z");
      r.kill_constants();
      return disc(r, 49);
    case TopType::T13:
    case TopType::T15: {
      r.src(vx() - half(r.a(7)), vy() - half(r.a(8)), vz(), "complete squares");
      r.kill_constants();
      int k = t == TopType::T13 ? 50 : 54;
      if (r.a(9).is_zero()) return disc(r, k + 1);
      r.src(vx(), vy(), vz() * r.a(9).inv(), "scale");
      return disc(r, k);
    }
    case TopType::T14:
      r.src(vx() - r.a(8), vy() - r.a(7), vz(), "translate");
      r.kill_constants();
      if (r.a(9).is_zero()) return disc(r, 53);
      r.src(vx(), vy(), vz() * r.a(9).inv(), "scale");
      return disc(r, 52);
    case TopType::T16:
      r.src(vx() - half(r.a(7)), vy(), vz(), "complete the square");
      r.tgt(vp() - vq() * r.a(8), vq(), "absorb y");
      r.kill_constants();
      if (r.a(9).is_zero()) return disc(r, 57);
      r.src(vx(), vy(), vz() * r.a(9).inv(), "scale");
      return disc(r, 56);
    case TopType::T17:
    case TopType::T18: {
      r.src(vx() - half(r.a(7)), vy(), vz(), "complete the square");
      r.kill_constants();
      int k = t == TopType::T17 ? 58 : 60;
      bool lin = linear_to_y(r);
      return disc(r, lin ? k : k + 1);
    }
    case TopType::T19:
      r.kill_constants();
      return disc(r, 62);
    case TopType::T20:
      r.kill_constants();
      return disc(r, 63);
    case TopType::T21:
      r.kill_constants();
      return disc(r, 64);
    default:
      throw TypeMismatch("recipe_lower called with " + type_name(t));
  }
}

}  // namespace qmap::detail
