#include "qmap/maps.hpp"

#include <stdexcept>

namespace qmap {

namespace {
Exp mono(int x, int y, int z) {
  Exp e{};
  e[X] = uint8_t(x);
  e[Y] = uint8_t(y);
  e[Z] = uint8_t(z);
  return e;
}
const char* const kMonoNames[10] = {"x^2", "xy", "xz", "y^2", "yz", "z^2", "x", "y", "z", "1"};
}  // namespace

const std::array<Exp, 10> kQuadBasis = {mono(2, 0, 0), mono(1, 1, 0), mono(1, 0, 1), mono(0, 2, 0), mono(0, 1, 1),
                                        mono(0, 0, 2), mono(1, 0, 0), mono(0, 1, 0), mono(0, 0, 1), mono(0, 0, 0)};

const char* quad_monomial_name(int k) { return kMonoNames[k]; }

Poly QuadMap::to_poly(const std::array<TowerElem, 10>& c) {
  Poly r;
  for (int k = 0; k < 10; ++k) r += Poly::monomial(c[k], kQuadBasis[k]);
  return r.with_ring(kXYZ);
}

std::array<TowerElem, 10> QuadMap::coeffs(const Poly& f) {
  if (f.used() & ~kXYZ) throw std::invalid_argument("component uses variables other than x, y, z: " + f.str());
  if (f.total_degree() > 2) throw std::invalid_argument("component has degree above 2: " + f.str());
  std::array<TowerElem, 10> c{};
  for (int k = 0; k < 10; ++k) c[k] = f.coeff(kQuadBasis[k]);
  return c;
}

QuadMap::QuadMap(const Poly& f, const Poly& g) : a(coeffs(f)), b(coeffs(g)) {}

namespace {
int deg_of(const std::array<TowerElem, 10>& c) {
  for (int k = 0; k < 6; ++k)
    if (!c[k].is_zero()) return 2;
  for (int k = 6; k < 9; ++k)
    if (!c[k].is_zero()) return 1;
  return c[9].is_zero() ? -1 : 0;
}
bool homog(const std::array<TowerElem, 10>& c) {
  int d = deg_of(c);
  for (int k = 0; k < 10; ++k) {
    int kd = k < 6 ? 2 : (k < 9 ? 1 : 0);
    if (kd != d && !c[k].is_zero()) return false;
  }
  return true;
}
}  // namespace

int QuadMap::deg_f() const { return deg_of(a); }
int QuadMap::deg_g() const { return deg_of(b); }
bool QuadMap::is_homogeneous() const { return homog(a) && homog(b); }
std::string QuadMap::str() const { return "(" + f().str() + ", " + g().str() + ")"; }

// ---- automorphisms ----

SourceAut SourceAut::identity() {
  SourceAut s;
  for (int i = 0; i < 3; ++i) s.M[i][i] = 1;
  return s;
}

SourceAut SourceAut::from_polys(const Poly& x, const Poly& y, const Poly& z) {
  SourceAut s;
  const Poly* im[3] = {&x, &y, &z};
  const Var vars[3] = {X, Y, Z};
  for (int i = 0; i < 3; ++i) {
    if (im[i]->used() & ~kXYZ) throw std::invalid_argument("source map uses variables other than x, y, z");
    if (im[i]->total_degree() > 1) throw std::invalid_argument("source map is not affine");
    for (int j = 0; j < 3; ++j) {
      Exp e{};
      e[vars[j]] = 1;
      s.M[i][j] = im[i]->coeff(e);
    }
    s.t[i] = im[i]->constant_term();
  }
  if (s.det().is_zero()) throw std::invalid_argument("source map is singular");
  return s;
}

std::array<Poly, 3> SourceAut::polys() const {
  std::array<Poly, 3> out;
  const Var vars[3] = {X, Y, Z};
  for (int i = 0; i < 3; ++i) {
    Poly p(t[i]);
    for (int j = 0; j < 3; ++j) p += Poly::var(vars[j]).scaled(M[i][j]);
    out[i] = p.with_ring(kXYZ);
  }
  return out;
}

TowerElem SourceAut::det() const {
  return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
         M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
}

SourceAut SourceAut::inverse() const {
  TowerElem d = det();
  if (d.is_zero()) throw std::invalid_argument("singular source map");
  TowerElem di = d.inv();
  SourceAut r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r.M[i][j] = (M[i1][j1] * M[i2][j2] - M[i1][j2] * M[i2][j1]) * di;
    }
  for (int i = 0; i < 3; ++i) {
    TowerElem acc;
    for (int j = 0; j < 3; ++j) acc -= r.M[i][j] * t[j];
    r.t[i] = acc;
  }
  return r;
}

SourceAut compose(const SourceAut& outer, const SourceAut& inner) {
  SourceAut r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      TowerElem acc;
      for (int k = 0; k < 3; ++k) acc += outer.M[i][k] * inner.M[k][j];
      r.M[i][j] = acc;
    }
    TowerElem acc = outer.t[i];
    for (int k = 0; k < 3; ++k) acc += outer.M[i][k] * inner.t[k];
    r.t[i] = acc;
  }
  return r;
}

TargetAut TargetAut::identity() {
  TargetAut t;
  t.N[0][0] = 1;
  t.N[1][1] = 1;
  return t;
}

TargetAut TargetAut::from_polys(const Poly& p, const Poly& q) {
  TargetAut r;
  const Poly* im[2] = {&p, &q};
  const Var vars[2] = {P, Q};
  for (int i = 0; i < 2; ++i) {
    if (im[i]->used() & ~kPQ) throw std::invalid_argument("target map uses variables other than p, q");
    if (im[i]->total_degree() > 1) throw std::invalid_argument("target map is not affine");
    for (int j = 0; j < 2; ++j) {
      Exp e{};
      e[vars[j]] = 1;
      r.N[i][j] = im[i]->coeff(e);
    }
    r.u[i] = im[i]->constant_term();
  }
  if (r.det().is_zero()) throw std::invalid_argument("target map is singular");
  return r;
}

std::array<Poly, 2> TargetAut::polys() const {
  std::array<Poly, 2> out;
  for (int i = 0; i < 2; ++i)
    out[i] = (Poly(u[i]) + Poly::var(P).scaled(N[i][0]) + Poly::var(Q).scaled(N[i][1])).with_ring(kPQ);
  return out;
}

TowerElem TargetAut::det() const { return N[0][0] * N[1][1] - N[0][1] * N[1][0]; }

TargetAut TargetAut::inverse() const {
  TowerElem d = det();
  if (d.is_zero()) throw std::invalid_argument("singular target map");
  TowerElem di = d.inv();
  TargetAut r;
  r.N[0][0] = N[1][1] * di;
  r.N[0][1] = -N[0][1] * di;
  r.N[1][0] = -N[1][0] * di;
  r.N[1][1] = N[0][0] * di;
  for (int i = 0; i < 2; ++i) r.u[i] = -(r.N[i][0] * u[0] + r.N[i][1] * u[1]);
  return r;
}

TargetAut compose(const TargetAut& outer, const TargetAut& inner) {
  TargetAut r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r.N[i][j] = outer.N[i][0] * inner.N[0][j] + outer.N[i][1] * inner.N[1][j];
    r.u[i] = outer.u[i] + outer.N[i][0] * inner.u[0] + outer.N[i][1] * inner.u[1];
  }
  return r;
}

// ---- composition ----

namespace {
// coefficient vector of c(phi) for the affine source map, computed directly
std::array<TowerElem, 10> pull_back(const std::array<TowerElem, 10>& c, const SourceAut& s) {
  // linear forms l_i = M[i] . (x,y,z) + t_i, stored as 4-vectors (x, y, z, 1)
  std::array<std::array<TowerElem, 4>, 3> l;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) l[i][j] = s.M[i][j];
    l[i][3] = s.t[i];
  }
  // symmetric 4x4 coefficient matrix Q of the homogenized quadric
  TowerElem Qm[4][4];
  auto half = [](const TowerElem& v) { return v * TowerElem(Rational(1, 2)); };
  Qm[0][0] = c[0];
  Qm[1][1] = c[3];
  Qm[2][2] = c[5];
  Qm[3][3] = c[9];
  Qm[0][1] = Qm[1][0] = half(c[1]);
  Qm[0][2] = Qm[2][0] = half(c[2]);
  Qm[1][2] = Qm[2][1] = half(c[4]);
  Qm[0][3] = Qm[3][0] = half(c[6]);
  Qm[1][3] = Qm[3][1] = half(c[7]);
  Qm[2][3] = Qm[3][2] = half(c[8]);
  // homogeneous substitution matrix L (4x4): rows are l_0, l_1, l_2, (0,0,0,1)
  TowerElem L[4][4];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) L[i][j] = l[i][j];
  L[3][3] = 1;
  // R = L^T Q L
  TowerElem QL[4][4], R[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      TowerElem acc;
      for (int k = 0; k < 4; ++k)
        if (!Qm[i][k].is_zero() && !L[k][j].is_zero()) acc += Qm[i][k] * L[k][j];
      QL[i][j] = acc;
    }
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      TowerElem acc;
      for (int k = 0; k < 4; ++k)
        if (!L[k][i].is_zero() && !QL[k][j].is_zero()) acc += L[k][i] * QL[k][j];
      R[i][j] = acc;
    }
  std::array<TowerElem, 10> o;
  o[0] = R[0][0];
  o[1] = R[0][1] * 2;
  o[2] = R[0][2] * 2;
  o[3] = R[1][1];
  o[4] = R[1][2] * 2;
  o[5] = R[2][2];
  o[6] = R[0][3] * 2;
  o[7] = R[1][3] * 2;
  o[8] = R[2][3] * 2;
  o[9] = R[3][3];
  return o;
}
}  // namespace

QuadMap compose_source(const QuadMap& F, const SourceAut& phi) {
  QuadMap r;
  r.a = pull_back(F.a, phi);
  r.b = pull_back(F.b, phi);
  return r;
}

QuadMap compose_target(const TargetAut& psi, const QuadMap& F) {
  QuadMap r;
  for (int k = 0; k < 10; ++k) {
    r.a[k] = psi.N[0][0] * F.a[k] + psi.N[0][1] * F.b[k];
    r.b[k] = psi.N[1][0] * F.a[k] + psi.N[1][1] * F.b[k];
  }
  r.a[9] += psi.u[0];
  r.b[9] += psi.u[1];
  return r;
}

QuadMap conjugate(const QuadMap& F, const SourceAut& phi, const TargetAut& psi) {
  return compose_target(psi, compose_source(F, phi));
}

Minors minors(const QuadMap& F) {
  Poly f = F.f(), g = F.g();
  Poly fx = f.derivative(X), fy = f.derivative(Y), fz = f.derivative(Z);
  Poly gx = g.derivative(X), gy = g.derivative(Y), gz = g.derivative(Z);
  return {(fx * gy - fy * gx).with_ring(kXYZ), (fx * gz - fz * gx).with_ring(kXYZ), (fy * gz - fz * gy).with_ring(kXYZ)};
}

QuadMap top_part(const QuadMap& F) {
  QuadMap r;
  auto strip = [](const std::array<TowerElem, 10>& c) {
    std::array<TowerElem, 10> o{};
    int d = deg_of(c);
    for (int k = 0; k < 10; ++k) {
      int kd = k < 6 ? 2 : (k < 9 ? 1 : 0);
      if (kd == d) o[k] = c[k];
    }
    return o;
  };
  r.a = strip(F.a);
  r.b = strip(F.b);
  return r;
}

// ---- chains ----

void WitnessChain::source(const SourceAut& s, std::string label) {
  if (s.det().is_zero()) throw std::invalid_argument("singular source step: " + label);
  WitnessStep st;
  st.kind = WitnessStep::Source;
  st.src = s;
  st.label = std::move(label);
  steps.push_back(std::move(st));
}

void WitnessChain::target(const TargetAut& t, std::string label) {
  if (t.det().is_zero()) throw std::invalid_argument("singular target step: " + label);
  WitnessStep st;
  st.kind = WitnessStep::Target;
  st.tgt = t;
  st.label = std::move(label);
  steps.push_back(std::move(st));
}

void WitnessChain::append(const WitnessChain& other) { steps.insert(steps.end(), other.steps.begin(), other.steps.end()); }

QuadMap WitnessChain::apply(const QuadMap& F) const {
  QuadMap G = F;
  for (auto& s : steps) G = s.kind == WitnessStep::Source ? compose_source(G, s.src) : compose_target(s.tgt, G);
  return G;
}

std::pair<SourceAut, TargetAut> WitnessChain::composite() const {
  SourceAut phi = SourceAut::identity();
  TargetAut psi = TargetAut::identity();
  for (auto& s : steps) {
    if (s.kind == WitnessStep::Source) phi = compose(phi, s.src);
    else psi = compose(s.tgt, psi);
  }
  return {phi, psi};
}

std::pair<SourceAut, TargetAut> WitnessChain::to_canonical_inverse() const {
  auto [phi, psi] = composite();
  return {phi.inverse(), psi.inverse()};
}

WitnessCheck verify_witness(const QuadMap& F, const QuadMap& G, const WitnessChain& chain) {
  WitnessCheck out;
  QuadMap back;
  try {
    auto [phi, psi] = chain.to_canonical_inverse();
    back = conjugate(G, phi, psi);
  } catch (const std::exception& e) {
    out.diff.push_back(std::string("chain could not be inverted: ") + e.what());
    return out;
  }
  for (int k = 0; k < 10; ++k) {
    if (back.a[k] != F.a[k])
      out.diff.push_back(std::string("f[") + kMonoNames[k] + "]: got " + to_literal(back.a[k]) + " expected " +
                         to_literal(F.a[k]));
    if (back.b[k] != F.b[k])
      out.diff.push_back(std::string("g[") + kMonoNames[k] + "]: got " + to_literal(back.b[k]) + " expected " +
                         to_literal(F.b[k]));
  }
  out.ok = out.diff.empty();
  return out;
}

std::pair<Poly, Poly> apply_poly_witness(const std::pair<Poly, Poly>& F, const PolyWitness& w) {
  if (w.kind == PolyWitness::Source) {
    std::map<Var, Poly> m{{X, w.source_map[0]}, {Y, w.source_map[1]}, {Z, w.source_map[2]}};
    return {subst(F.first, m), subst(F.second, m)};
  }
  std::map<Var, Poly> m{{P, F.first}, {Q, F.second}};
  return {subst(w.target_map[0], m), subst(w.target_map[1], m)};
}

}  // namespace qmap
