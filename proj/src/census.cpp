#include "qmap/census.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qmap/expr.hpp"

namespace qmap {

namespace {

Poly tvar() { return Poly::var(T); }
Poly svar() { return Poly::var(S); }

UPoly U(const Poly& p) { return UPoly::from(p, T); }
Poly as_poly(const UPoly& u) { return u.to_poly(T); }

// removes from r every root of h
UPoly strip(UPoly r, const UPoly& h) {
  if (r.is_zero() || h.is_zero() || h.degree() <= 0) return r;
  for (;;) {
    UPoly g = gcd(r, h);
    if (g.degree() <= 0) return r;
    r = divmod(r, g).first;
  }
}

int distinct(const UPoly& u) { return u.is_zero() ? 0 : (int)distinct_root_count(u); }

// simple roots, roots of multiplicity >= 2
std::pair<int, int> cusp_counts(const UPoly& u) {
  if (u.is_zero() || u.degree() <= 0) return {0, 0};
  auto dec = squarefree_decomposition(u);
  int simple = dec.empty() ? 0 : std::max(0, dec[0].degree());
  int multiple = 0;
  for (size_t m = 1; m < dec.size(); ++m) multiple += std::max(0, dec[m].degree());
  return {simple, multiple};
}

Poly to_s(const Poly& p) { return subst(p, {{T, svar()}}); }

// h(x, y, z) of total degree <= d along the curve, times D^d
Poly compose_deg(const Parametrization& c, const Poly& h, int d) {
  Poly out;
  std::vector<Poly> dp{Poly(1)};
  for (int k = 1; k <= d; ++k) dp.push_back(dp.back() * c.D);
  for (auto& [e, coef] : h.terms()) {
    int deg = e[X] + e[Y] + e[Z];
    if (deg > d) throw std::invalid_argument("compose_deg: degree bound exceeded");
    out += Poly(coef) * c.X.pow(e[X]) * c.Y.pow(e[Y]) * c.Z.pow(e[Z]) * dp[d - deg];
  }
  return out;
}

struct CurveData {
  Poly Nf, Ng;  // f, g along the curve times D^2
  UPoly crit;   // critical points of the restriction, exclusions removed
  Component::Restriction restriction = Component::NotComputed;
};

CurveData analyze_curve(const QuadMap& F, const Parametrization& c) {
  CurveData cd;
  cd.Nf = compose_deg(c, F.f(), 2);
  cd.Ng = compose_deg(c, F.g(), 2);
  Poly Dd = c.D.derivative(T);
  Poly Wf = cd.Nf.derivative(T) * c.D - cd.Nf * Dd * 2;
  Poly Wg = cd.Ng.derivative(T) * c.D - cd.Ng * Dd * 2;
  if (Wf.is_zero() && Wg.is_zero()) {
    cd.restriction = Component::Constant;
    return cd;
  }
  UPoly ex = U(c.D);
  cd.crit = strip(gcd(U(Wf), U(Wg)), ex);
  int deg = 1 << 20;
  for (long k : {2, 3, 5, 7, 11, 13}) {
    TowerElem t0 = TowerElem(Rational(k, 3));
    TowerElem D0 = ex.eval(t0);
    if (D0.is_zero()) continue;
    TowerElem f0 = U(cd.Nf).eval(t0), g0 = U(cd.Ng).eval(t0);
    Poly Ef = cd.Nf * (D0 * D0) - c.D * c.D * f0;
    Poly Eg = cd.Ng * (D0 * D0) - c.D * c.D * g0;
    UPoly gg = strip(gcd(U(Ef), U(Eg)), ex);
    deg = std::min(deg, gg.degree());
    if (deg <= 1) break;
  }
  cd.restriction = deg <= 1 ? Component::Injective : deg == 2 ? Component::TwoToOne : Component::NotComputed;
  return cd;
}

// points of curve c lying on component o, as a polynomial in T (zero when c lies inside o)
UPoly on_component(const Parametrization& c, const Component& o) {
  UPoly g;
  for (auto& eq : o.equations) {
    UPoly v = U(compose_deg(c, eq, eq.total_degree()));
    g = gcd(g, v);
  }
  return g;
}

// eliminates s from two polynomials in (t, s); spurious roots from vanishing leading coefficients removed
UPoly eliminate(const Poly& a, const Poly& b, const UPoly& ex) {
  Poly r = resultant(a, b, S);
  if (r.is_zero()) return UPoly();
  auto ac = a.coeffs_in(S), bc = b.coeffs_in(S);
  UPoly lc = gcd(U(ac.back()), U(bc.back()));
  return strip(strip(U(r), ex), lc);
}

}  // namespace

Poly Parametrization::compose(const Poly& h) const { return compose_deg(*this, h, h.total_degree()); }

bool Parametrization::annihilates(const QuadMap& F) const {
  Minors m = minors(F);
  for (const Poly* p : {&m.xy, &m.xz, &m.yz})
    if (!compose_deg(*this, *p, 2).is_zero()) return false;
  return true;
}

std::string kind_name(Component::Kind k) {
  static const char* names[] = {"line", "double line", "triple line", "hyperbola", "parabola", "degree-3 curve",
                                "plane", "double plane", "cylinder", "embedded double line", "embedded point", "space"};
  return names[k];
}

std::string restriction_name(Component::Restriction r) {
  static const char* names[] = {"injective", "2:1 branched", "constant", "-"};
  return names[r];
}

std::string Component::str() const {
  std::string s = kind_name(kind) + " V(";
  for (size_t i = 0; i < equations.size(); ++i) s += (i ? ", " : "") + equations[i].str();
  s += ")";
  if (restriction != NotComputed) s += " " + restriction_name(restriction);
  return s;
}

namespace {

// reduced curves by their number of points at infinity; other kinds by name
std::string topology_name(const Component& c) {
  bool reduced = c.kind == Component::Line || c.kind == Component::Hyperbola || c.kind == Component::Parabola ||
                 c.kind == Component::Cubic;
  if (!c.param || !reduced) return kind_name(c.kind);
  const Parametrization& p = *c.param;
  UPoly common = gcd(gcd(U(p.X), U(p.Y)), U(p.Z));
  int poles = distinct(strip(U(p.D), common));
  int top = std::max({p.X.degree(T), p.Y.degree(T), p.Z.degree(T)});
  if (top > p.D.degree(T)) ++poles;
  return "curve with " + std::to_string(poles) + " punctures";
}

}  // namespace

std::string Census::signature() const {
  std::vector<std::string> parts;
  for (auto& c : components) parts.push_back(topology_name(c) + "/" + restriction_name(c.restriction) + "/" + std::to_string(c.restriction_critical));
  std::sort(parts.begin(), parts.end());
  std::ostringstream os;
  os << cusps << "," << double_cusps << "," << nodes << "," << intersections << ";";
  for (auto& p : parts) os << p << ";";
  return os.str();
}

std::string Census::str() const {
  std::ostringstream os;
  os << cusps << " cusps, " << double_cusps << " double cusps, " << nodes << " nodes, " << intersections
     << " image intersections";
  for (auto& c : components) os << "; " << c.str();
  if (!note.empty()) os << " [" << note << "]";
  return os.str();
}


namespace {

struct Analyzed {
  std::vector<Component> comps;
  std::vector<std::optional<CurveData>> data;
};

Analyzed analyze_all(const QuadMap& F, std::vector<Component> comps) {
  Analyzed a{std::move(comps), {}};
  a.data.resize(a.comps.size());
  for (size_t i = 0; i < a.comps.size(); ++i) {
    auto& c = a.comps[i];
    if (!c.param || !c.is_curve()) continue;
    a.data[i] = analyze_curve(F, *c.param);
    c.restriction = a.data[i]->restriction;
    c.restriction_critical = distinct(a.data[i]->crit);
  }
  return a;
}

// removes factors depending on t alone or on s alone; on a divided difference they only come from poles
Poly primitive(Poly p) {
  if (p.is_zero()) return p;
  for (Var v : {S, T}) {
    Var w = v == S ? T : S;
    UPoly g;
    for (auto& c : p.coeffs_in(v))
      if (!c.is_zero()) g = gcd(g, UPoly::from(c, w));
    if (g.degree() > 0) p = *divide_exact(p, g.to_poly(w));
  }
  return p;
}

Poly divided_difference(const Poly& N, const Poly& D) {
  Poly e = N * to_s(D) * to_s(D) - to_s(N) * D * D;
  auto q = divide_exact(e, tvar() - svar());
  if (!q) throw std::logic_error("divided difference not exact");
  return primitive(*q);
}

// points of the image of a meeting the image of b, in the parameter of a; zero when the images share a curve
UPoly cross_eliminant(const Parametrization& ca, const CurveData& da, const Parametrization& cb, const CurveData& db) {
  Poly Db = to_s(cb.D);
  Poly Ef = da.Nf * Db * Db - to_s(db.Nf) * ca.D * ca.D;
  Poly Eg = da.Ng * Db * Db - to_s(db.Ng) * ca.D * ca.D;
  if (Ef.is_zero() || Eg.is_zero()) return UPoly();
  return eliminate(Ef, Eg, U(ca.D));
}

// image points represented by the roots of e on a curve with the given data
int image_points(const UPoly& e, const CurveData& d, Census& out);

void add_note(Census& c, const std::string& s) { c.note += (c.note.empty() ? "" : "; ") + s; }

int image_points(const UPoly& e, const CurveData& d, Census& out) {
  int n = distinct(e);
  if (d.restriction == Component::Injective) return n;
  int br = distinct(gcd(squarefree_part(e), d.crit));
  if ((n - br) % 2) add_note(out, "odd intersection root count");
  return br + (n - br) / 2;
}

}  // namespace

Census census_from_components(const QuadMap& F, std::vector<Component> comps) {
  Analyzed an = analyze_all(F, std::move(comps));
  Census out;
  out.applicable = false;
  UPoly cusp_all(std::vector<TowerElem>{1}), node_all(std::vector<TowerElem>{1});
  const size_t n = an.comps.size();
  auto moving = [&](size_t i) { return an.data[i] && an.data[i]->restriction != Component::Constant; };

  for (size_t i = 0; i < n; ++i) {
    if (!moving(i)) continue;
    out.applicable = true;
    if (an.data[i]->restriction != Component::Injective) continue;
    const Parametrization& c = *an.comps[i].param;
    const CurveData& cd = *an.data[i];
    UPoly ex = U(c.D);
    UPoly cusp = cd.crit;
    for (size_t j = 0; j < n; ++j) {
      if (j == i || an.comps[j].equations.empty() || an.comps[j].kind == Component::Space) continue;
      UPoly on = on_component(c, an.comps[j]);
      if (!on.is_zero()) cusp = strip(cusp, on);
    }
    auto [s1, s2] = cusp_counts(cusp);
    out.cusps += s1;
    out.double_cusps += s2;
    if (cusp.degree() > 0) cusp_all = cusp_all * cusp;

    Poly Pf = divided_difference(cd.Nf, c.D), Pg = divided_difference(cd.Ng, c.D);
    if (Pf.is_zero() || Pg.is_zero()) continue;
    UPoly r = eliminate(Pf, Pg, ex);
    if (r.is_zero()) {
      add_note(out, "self-intersection elimination degenerate on " + an.comps[i].str());
      continue;
    }
    r = strip(r, cd.crit);
    int d = distinct(r);
    if (d % 2) add_note(out, "odd node root count on " + an.comps[i].str());
    out.nodes += d / 2;
    if (r.degree() > 0) node_all = node_all * squarefree_part(r);
  }

  std::vector<size_t> mv;
  for (size_t i = 0; i < n; ++i)
    if (moving(i)) mv.push_back(i);
  auto cross = [&](size_t a, size_t b) {
    return cross_eliminant(*an.comps[a].param, *an.data[a], *an.comps[b].param, *an.data[b]);
  };
  for (size_t x = 0; x < mv.size(); ++x)
    for (size_t y = x + 1; y < mv.size(); ++y) {
      size_t a = mv[x], b = mv[y];
      if (an.data[a]->restriction != Component::Injective) std::swap(a, b);
      UPoly e = cross(a, b);
      if (e.is_zero()) {
        add_note(out, "images of " + an.comps[a].str() + " and " + an.comps[b].str() + " share a curve");
        continue;
      }
      out.intersections += image_points(e, *an.data[a], out);
    }
  // a point where three image curves meet was counted once per pair
  for (size_t x = 0; x < mv.size(); ++x)
    for (size_t y = x + 1; y < mv.size(); ++y)
      for (size_t z = y + 1; z < mv.size(); ++z) {
        size_t a = mv[x];
        UPoly e1 = cross(a, mv[y]), e2 = cross(a, mv[z]);
        if (e1.is_zero() || e2.is_zero()) continue;
        out.intersections -= 2 * image_points(gcd(e1, e2), *an.data[a], out);
      }
  out.cusp_poly = as_poly(cusp_all.monic());
  out.node_poly = as_poly(node_all.monic());
  out.components = std::move(an.comps);
  return out;
}

// ---- families ----

Poly hc_poly(const TowerElem& A, const TowerElem& B) {
  Poly t = tvar(), t1 = t + Poly(1);
  return Poly(B) * t.pow(3) * t1.pow(3) + t.pow(3) - Poly(A) * t1.pow(3);
}

Poly hn_poly(const TowerElem& A, const TowerElem& B) {
  Poly t = tvar(), t1 = t + Poly(1), bt2 = Poly(B) * t * t;
  return t1.pow(4) * (bt2 + Poly(A)).pow(2) + Poly(2) * t * t * t1 * t1 * (bt2 - Poly(A)) + t.pow(4);
}

Poly hc_symbolic() {
  Poly t = tvar(), t1 = t + Poly(1), a = Poly::var(qmap::A), b = Poly::var(qmap::B);
  return b * t.pow(3) * t1.pow(3) + t.pow(3) - a * t1.pow(3);
}

Poly hn_symbolic() {
  Poly t = tvar(), t1 = t + Poly(1), a = Poly::var(qmap::A), b = Poly::var(qmap::B), bt2 = b * t * t;
  return t1.pow(4) * (bt2 + a).pow(2) + Poly(2) * t * t * t1 * t1 * (bt2 - a) + t.pow(4);
}

Poly h0_symbolic() {
  Poly a = Poly::var(qmap::A), b = Poly::var(qmap::B), one(1);
  return (a + b).pow(4) + (a - one).pow(4) + (b + one).pow(4) - a.pow(4) - b.pow(4) - one +
         Poly(124) * a * b * (a - b + one);
}

Parametrization family1_curve() {
  Poly t = tvar(), t1 = t + Poly(1);
  return {t * t, t1 * t1, t * t * t1, t * t1};
}

namespace {

std::vector<Poly> polys(std::initializer_list<const char*> s, TowerCtx& ctx) {
  std::vector<Poly> out;
  for (auto* x : s) out.push_back(parse_poly(x, ctx));
  return out;
}

Component family1_component() {
  TowerCtx ctx;
  Component c;
  c.kind = Component::Cubic;
  c.equations = polys({"x*y-1", "x*(z+1)-z", "y*z-(z+1)"}, ctx);
  c.param = family1_curve();
  return c;
}

Component family8_component(const TowerElem& A) {
  Poly t = tvar(), a(A), ta = t + a;
  Poly x = Poly::var(X), y = Poly::var(Y), z = Poly::var(Z);
  Component c;
  c.kind = Component::Cubic;
  c.equations = {x * (z + a) - Poly(1), x * y - z, y - z * (z + a)};
  c.param = Parametrization{Poly(1), (t * t + a * t) * ta, t * ta, ta};
  return c;
}

// cusp and node counts from a cusp polynomial and a node polynomial
void counts_from_h(Census& c, const Poly& hc, const Poly& hn) {
  UPoly uc = U(hc), un = U(hn);
  auto [s1, s2] = cusp_counts(uc);
  c.cusps = s1;
  c.double_cusps = s2;
  UPoly rest = strip(un, uc);
  int d = distinct(rest);
  if (d % 2) add_note(c, "odd node root count");
  c.nodes = d / 2;
  c.cusp_poly = hc;
  c.node_poly = hn;
}

void cross_check(Census& h, const Census& engine) {
  if (engine.cusps != h.cusps || engine.double_cusps != h.double_cusps || engine.nodes != h.nodes)
    add_note(h, "elimination census differs: " + std::to_string(engine.cusps) + "," +
                    std::to_string(engine.double_cusps) + "," + std::to_string(engine.nodes));
}

}  // namespace

Census census_family1(const TowerElem& A, const TowerElem& B) {
  if (A.is_zero() || B.is_zero()) throw ParamOutOfDomain("family parameters must be nonzero");
  QuadMap F = canonical_form(AffineClass::family(AffineClass::Family1, {A, B}));
  Census engine = census_from_components(F, {family1_component()});
  Census c = engine;
  counts_from_h(c, hc_poly(A, B), hn_poly(A, B));
  cross_check(c, engine);
  return c;
}

Census census_family8(const TowerElem& A) {
  QuadMap F = canonical_form(AffineClass::family(AffineClass::Family8, {A}));
  Census engine = census_from_components(F, {family8_component(A)});
  Census c = engine;
  Poly t = tvar(), a(A);
  counts_from_h(c, (Poly(3) * t + a) * (t + a).pow(3) - Poly(1), t * t * (t + a) * (t + a) + Poly(1));
  cross_check(c, engine);
  return c;
}

Census family4_structure(const TowerElem& A) {
  if (A.is_zero()) throw ParamOutOfDomain("family parameter must be nonzero");
  QuadMap F = canonical_form(AffineClass::family(AffineClass::Family4, {A}));
  TowerCtx ctx;
  Poly t = tvar();
  Component h{Component::Hyperbola, polys({"x*y-1", "z"}, ctx), Parametrization{t * t, Poly(1), Poly(0), t}};
  Component l{Component::Line, polys({"x-1", "y-1"}, ctx), Parametrization{Poly(1), Poly(1), t, Poly(1)}};
  return census_from_components(F, {h, l});
}

// ---- stated component table ----

namespace {

struct Def {
  Component::Kind kind;
  std::vector<const char*> eqs;
  const char *x = nullptr, *y = nullptr, *z = nullptr, *d = "1";
  char r = '-';  // i injective, 2 two-to-one, c constant
};

using K = Component;
const char* const kA9 = "(sqrt(2)*(1+i))";

std::vector<Def> defs(int k) {
  switch (k) {
    case 1: return {{K::Cubic, {"x*y-1", "x*(z+1)-z", "y*z-(z+1)"}, "t^2", "(t+1)^2", "t^2*(t+1)", "t*(t+1)", 'i'}};
    case 2: return {{K::Cubic, {"x*y-1", "x*(2*z+i)-4*z", "4*y*z-(2*z+i)"}, "16*t^2", "(2*t+i)^2", "4*t^2*(2*t+i)", "4*t*(2*t+i)", 'i'}};
    case 3: return {{K::Cubic, {"4*x*y-1", "2*x*(z+1)-z", "2*y*z-(z+1)"}, "t^2", "(t+1)^2", "2*t^2*(t+1)", "2*t*(t+1)", 'i'}};
    case 4: return {{K::Hyperbola, {"2*x*y-1", "z"}, "2*t^2", "1", "0", "2*t", 'i'}, {K::Line, {"x-1", "2*y-1"}, "1", "1/2", "t", "1", '2'}};
    case 5: return {{K::Hyperbola, {"x*y-1", "z"}, "t^2", "1", "0", "t", 'i'}, {K::Line, {"x-1", "y-1"}, "1", "1", "t", "1", '2'}};
    case 6: return {{K::Line, {"x", "y-1"}, "0", "1", "t", "1", '2'}, {K::Line, {"x", "z"}, "0", "t", "0", "1", 'i'}, {K::Line, {"y", "z"}, "t", "0", "0", "1", '2'}};
    case 7: return {{K::Line, {"x", "y"}, "0", "0", "t", "1", '2'}, {K::Line, {"x", "z"}, "0", "t", "0", "1", '2'}, {K::Line, {"y", "z"}, "t", "0", "0", "1", '2'}};
    case 8: return {{K::Cubic, {"x*z-1", "x*y-z", "y-z^2"}, "1", "t^3", "t^2", "t", 'i'}};
    case 9: return {{K::Cubic, {"x*(z+A)-1", "x*y-z", "y-z*(z+A)"}, "1", "(t^2+A*t)*(t+A)", "t*(t+A)", "t+A", 'i'}};
    case 10: return {{K::Parabola, {"x", "y-z*(z+1)"}, "0", "t*(t+1)", "t", "1", 'i'}, {K::Line, {"y", "z+1"}, "t", "0", "-1", "1", '2'}};
    case 11: return {{K::Hyperbola, {"x*y+1", "z+1"}, "t^2", "-1", "-t", "t", 'i'}, {K::Line, {"x", "z"}, "0", "t", "0", "1", 'i'}};
    case 12: return {{K::Line, {"x", "z"}, "0", "t", "0", "1", 'i'}, {K::Line, {"x", "z+1"}, "0", "t", "-1", "1", 'c'}, {K::Line, {"y", "z+1"}, "t", "0", "-1", "1", '2'}};
    case 13: return {{K::Parabola, {"x", "y-z^2"}, "0", "t^2", "t", "1", 'i'}, {K::Line, {"y", "z"}, "t", "0", "0", "1", '2'}};
    case 14: return {{K::DoubleLine, {"x", "z"}, "0", "t", "0", "1", 'c'}, {K::Line, {"y", "z"}, "t", "0", "0", "1", 'i'}};
    case 15: return {{K::DoubleLine, {"x", "z"}, "0", "t", "0", "1", 'c'}, {K::Line, {"y", "z"}, "t", "0", "0", "1", '2'}};
    case 16: return {{K::Hyperbola, {"x*z-1", "y"}, "t^2", "0", "1", "t", 'i'}};
    case 17: return {{K::Line, {"x", "y"}, "0", "0", "t", "1", '2'}, {K::Line, {"y", "z"}, "t", "0", "0", "1", 'i'}};
    case 18: return {{K::Hyperbola, {"x", "y*z-1"}, "0", "t^2", "1", "t", 'i'}};
    case 19: return {{K::Line, {"x", "y"}, "0", "0", "t", "1", '2'}, {K::Line, {"x", "z"}, "0", "t", "0", "1", 'c'}};
    case 20: return {{K::Line, {"x", "y"}, "0", "0", "t", "1", 'i'}, {K::Plane, {"z"}}};
    case 21: return {{K::Line, {"x", "y"}, "0", "0", "t", "1", '2'}, {K::Plane, {"z"}}};
    case 22: return {{K::Cubic, {"x-y^2", "z-y^3-y^2"}, "t^2", "t", "t^3+t^2", "1", 'i'}};
    case 23: return {{K::Cubic, {"x-y^2", "z-y^3-y^2-3/16*y"}, "t^2", "t", "t^3+t^2+3/16*t", "1", 'i'}};
    case 24: return {{K::Parabola, {"y", "x^2-z"}, "t", "0", "t^2", "1", 'i'}, {K::Line, {"x-1", "y+1"}, "1", "-1", "t", "1", 'i'}};
    case 25: return {{K::Line, {"x", "y"}, "0", "0", "t", "1", 'c'}, {K::DoubleLine, {"y", "x+1"}, "-1", "0", "t", "1", 'c'}};
    case 26: return {{K::TripleLine, {"x", "y"}, "0", "0", "t", "1", 'c'}};
    case 27: return {{K::Parabola, {"x", "y-z^2"}, "0", "t^2", "t", "1", 'i'}};
    case 28: return {{K::Line, {"y", "z"}, "t", "0", "0", "1", 'i'}};
    case 29: return {{K::Line, {"x", "z"}, "0", "t", "0", "1", 'c'}, {K::Plane, {"z+1"}}};
    case 30: return {{K::Plane, {"z"}}, {K::EmbeddedLine, {"x", "z"}, "0", "t", "0", "1", 'c'}};
    case 31: case 40: case 49: return {{K::Line, {"x", "y"}, "0", "0", "t", "1", 'i'}};
    case 33: case 42: case 51: return {{K::Plane, {"y"}}};
    case 34: return {{K::Cylinder, {"x*y-1"}, "t^2", "1", "0", "t"}};
    case 35: case 36: return {{K::Plane, {"x"}, "0", "t", "0", "1"}, {K::Plane, {"y"}, "t", "0", "0", "1"}};
    case 37: return {{K::Line, {"x", "y"}, "0", "0", "t", "1", 'i'}, {K::Line, {"y+1", "z"}, "t", "-1", "0", "1", 'i'}};
    case 38: return {{K::DoubleLine, {"y", "z"}, "t", "0", "0", "1", 'c'}};
    case 39: return {{K::Plane, {"y"}}, {K::EmbeddedPoint, {"x", "y^2", "z"}, "0", "0", "0", "1"}};
    case 43: return {{K::Cylinder, {"x-y^2"}, "t^2", "t", "0", "1"}};
    case 44: return {{K::Plane, {"y"}, "t", "0", "0", "1"}, {K::Plane, {"y+1"}, "t", "-1", "0", "1"}};
    case 45: return {{K::DoublePlane, {"y"}, "t", "0", "0", "1"}};
    case 46: return {{K::Line, {"y", "z"}, "t", "0", "0", "1", 'i'}};
    case 47: return {{K::Line, {"x", "y"}, "0", "0", "t", "1", 'c'}};
    case 53: case 57: return {{K::Plane, {"x"}}};
    case 48: case 54: case 55: case 59: case 60: case 61: case 63: case 64: return {{K::Space, {}}};
    default: return {};  // empty critical set
  }
}

std::string with_a(std::string s) {
  for (size_t p = s.find('A'); p != std::string::npos; p = s.find('A', p + 1)) {
    s.replace(p, 1, kA9);
    p += std::string(kA9).size() - 1;
  }
  return s;
}

char restriction_char(Component::Restriction r) {
  return r == Component::Injective ? 'i' : r == Component::TwoToOne ? '2' : r == Component::Constant ? 'c' : '-';
}

}  // namespace

std::vector<Component> stated_components(int k) {
  if (k < 1 || k > 64) throw std::out_of_range("representative number outside 1..64");
  std::vector<Component> out;
  TowerCtx ctx;
  for (auto& d : defs(k)) {
    Component c;
    c.kind = d.kind;
    for (auto* e : d.eqs) c.equations.push_back(parse_poly(with_a(e), ctx));
    if (d.x) c.param = Parametrization{parse_poly(with_a(d.x), ctx), parse_poly(with_a(d.y), ctx),
                                       parse_poly(with_a(d.z), ctx), parse_poly(with_a(d.d), ctx)};
    out.push_back(std::move(c));
  }
  return out;
}

Census census_discrete(int k) {
  switch (k) {
    case 1: return census_family1(1, 1);
    case 2: return census_family1(Rational(1, 16), Rational(-1, 16));
    case 4: return family4_structure(Rational(1, 4));
    case 8: return census_family8(0);
    case 9: {
      TowerCtx ctx;
      return census_family8(parse_poly(kA9, ctx).constant_term());
    }
    default: break;
  }
  auto comps = stated_components(k);
  Census c = census_from_components(representative(k), comps);
  if (std::any_of(comps.begin(), comps.end(), [](auto& x) { return x.kind == Component::Space; })) {
    c.applicable = false;
    add_note(c, "critical set is the whole space");
  } else if (comps.empty()) {
    add_note(c, "empty critical set");
  }
  return c;
}

Census census_of(const AffineClass& c) {
  switch (c.kind) {
    case AffineClass::Family1:
    case AffineClass::Family2: return census_family1(c.params.at(0), c.params.at(1));
    case AffineClass::Family4: return family4_structure(c.params.at(0));
    case AffineClass::Family8: return census_family8(c.params.at(0));
    default: return census_discrete(c.k);
  }
}

// ---- resultant identities ----

std::vector<ResultantCheck> verify_resultant_identities() {
  Poly a = Poly::var(qmap::A), b = Poly::var(qmap::B), h0 = h0_symbolic();
  Poly hc = hc_symbolic(), hn = hn_symbolic();
  std::vector<ResultantCheck> out{
      {"Res(Hc, Hc')", resultant(hc, hc.derivative(T), T), Poly(-729) * a.pow(2) * b.pow(3) * h0},
      {"Res(Hn, Hn')", resultant(hn, hn.derivative(T), T), Poly(16777216) * a.pow(8) * b.pow(10) * h0},
      {"Res(Hc, Hn)", resultant(hc, hn, T), a.pow(4) * b.pow(4) * h0 * h0}};
  for (auto& r : out) r.sign = r.computed == r.printed ? 1 : r.computed == -r.printed ? -1 : 0;
  return out;
}

namespace {

struct Plane {
  TowerElem a, b, c, k;
};

// squarefree eliminant, in X, of the residual minors on the plane z = a x + b y + c, with x = w + k y
UPoly minor_eliminant(const std::vector<Poly>& m, const Plane& pl, std::string& err) {
  Poly x = Poly::var(X), y = Poly::var(Y);
  Poly xs = x + Poly(pl.k) * y;
  std::map<Var, Poly> sub{{X, xs}, {Z, Poly(pl.a) * xs + Poly(pl.b) * y + Poly(pl.c)}};
  std::vector<Poly> r;
  for (auto& p : m) r.push_back(subst(p, sub));
  static const long w[4][3] = {{1, 3, 7}, {2, -5, 11}, {1, -4, 2}, {5, 1, -3}};
  auto combo = [&](const long* c) {
    Poly s;
    for (int i = 0; i < 3; ++i) s += r[i] * Poly(c[i]);
    return s;
  };
  Poly e1 = resultant(combo(w[0]), combo(w[1]), Y), e2 = resultant(combo(w[2]), combo(w[3]), Y);
  if (e1.is_zero() || e2.is_zero()) {
    err = "residual minors share a factor on a test plane";
    return UPoly();
  }
  UPoly g = gcd(UPoly::from(e1, X), UPoly::from(e2, X));
  return squarefree_part(g).monic();
}

UPoly component_eliminant(const Parametrization& c, const Plane& pl) {
  Poly Pt = c.Z - Poly(pl.a) * c.X - Poly(pl.b) * c.Y - Poly(pl.c) * c.D;
  Poly Qt = Poly::var(X) * c.D - (c.X - Poly(pl.k) * c.Y);
  return squarefree_part(UPoly::from(resultant(Pt, Qt, T), X)).monic();
}

}  // namespace

StructureReport verify_critical_structure(int k, bool strict) {
  StructureReport rep;
  rep.k = k;
  QuadMap F = k == 9 ? representative(9) : representative(k);
  auto comps = stated_components(k);
  Minors mn = minors(F);
  std::vector<Poly> m{mn.xy, mn.xz, mn.yz};
  auto fail = [&](const std::string& claim, const std::string& detail) {
    if (strict) throw StructureMismatch(claim, detail);
    rep.failures.push_back(claim + ": " + detail);
  };
  auto pass = [&](const std::string& s) { rep.checks.push_back(s); };
  std::string tag = "F" + std::to_string(k);

  bool space = std::any_of(comps.begin(), comps.end(), [](auto& c) { return c.kind == Component::Space; });
  if (space) {
    if (m[0].is_zero() && m[1].is_zero() && m[2].is_zero()) pass(tag + ": all minors vanish");
    else fail(tag + " critical set is the whole space", "a minor is nonzero");
    rep.ok = rep.failures.empty();
    return rep;
  }

  for (auto& c : comps) {
    if (c.param) {
      for (auto& eq : c.equations)
        if (!c.param->compose(eq).is_zero()) fail(tag + " " + c.str(), "parametrization leaves " + eq.str());
      if (c.kind != Component::EmbeddedPoint && !c.param->annihilates(F))
        if (!c.is_surface()) fail(tag + " " + c.str(), "minors do not vanish along it");
    }
    if (c.is_surface()) {
      int mult = c.kind == Component::DoublePlane ? 2 : 1;
      for (int t = 0; t < mult; ++t)
        for (auto& p : m) {
          if (p.is_zero()) continue;
          auto q = divide_exact(p, c.equations[0]);
          if (!q) {
            fail(tag + " " + c.str(), "does not divide the minors");
            rep.ok = false;
            return rep;
          }
          p = *q;
        }
      pass(tag + ": " + c.str() + " divides the minors");
    }
  }

  if (m[0].is_zero() && m[1].is_zero() && m[2].is_zero()) {
    fail(tag + " residual critical set", "minors vanish identically after removing surfaces");
    rep.ok = false;
    return rep;
  }
  for (auto& c : comps)
    if (c.kind == Component::EmbeddedPoint) {
      bool zero = true;
      for (auto& p : m) zero = zero && c.param->compose(p).is_zero();
      if (zero) pass(tag + ": residual minors vanish at the embedded point");
      else fail(tag + " " + c.str(), "residual minors do not vanish at the point");
    }

  static const Plane planes[2] = {{TowerElem(2, 1), TowerElem(-3), TowerElem(5, -2), TowerElem(3, 1)},
                                  {TowerElem(-1), TowerElem(4, 3), TowerElem(-2, 1), TowerElem(1, -2)}};
  for (auto& pl : planes) {
    std::string err;
    UPoly lhs = minor_eliminant(m, pl, err);
    if (!err.empty()) {
      fail(tag + " residual critical set", err);
      continue;
    }
    UPoly rhs(std::vector<TowerElem>{1});
    for (auto& c : comps)
      if (c.is_curve() && c.param) rhs = rhs * component_eliminant(*c.param, pl);
    rhs = squarefree_part(rhs).monic();
    if (lhs == rhs) pass(tag + ": curve components match the minors on a test plane");
    else fail(tag + " curve components", "plane section differs from the minors");
  }

  auto computed = analyze_all(F, comps).comps;
  auto d = defs(k);
  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i].r == '-') continue;
    char got = restriction_char(computed[i].restriction);
    if (got == d[i].r) pass(tag + ": restriction to " + computed[i].str());
    else fail(tag + " restriction to " + comps[i].str(), std::string("computed ") + restriction_name(computed[i].restriction));
  }
  rep.ok = rep.failures.empty();
  return rep;
}

}  // namespace qmap
