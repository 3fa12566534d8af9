#include "qmap/pencil.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qmap/expr.hpp"

namespace qmap {

int type_index(TopType t) { return static_cast<int>(t); }
std::string type_name(TopType t) { return "T" + std::to_string(type_index(t)); }

QuadMap top_normal_form(TopType t) {
  static const char* forms[21][2] = {
      {"x^2+z^2", "y^2+z^2"}, {"x^2+z^2", "y*z"},       {"x^2+y^2", "z^2"},     {"x^2+2*y*z", "y^2+2*x*y"},
      {"x^2+2*y*z", "z^2"},   {"x^2", "y^2"},           {"x*y", "y*z"},         {"x*y", "y^2"},
      {"x^2+y*z", "x"},       {"x^2+y*z", "y"},         {"x^2+y^2+z^2", "0"},   {"x^2+y^2", "z"},
      {"x^2+y^2", "x"},       {"x*y", "x"},             {"x^2+y^2", "0"},       {"x^2", "y"},
      {"x^2", "x"},           {"x^2", "0"},             {"x", "y"},             {"x", "0"},
      {"0", "0"}};
  int k = type_index(t) - 1;
  return parse_map(forms[k][0], forms[k][1]);
}

std::string PencilProfile::str() const {
  std::ostringstream os;
  os << "det=" << (det_cubic.is_zero() ? "0" : det_cubic.str()) << "; roots=";
  for (auto& [m, n] : root_profile) os << n << "x(mult " << m << ") ";
  for (auto& [m, r] : ranks_at_roots) os << "; rank " << r << " at mult-" << m << " root";
  if (!degenerate_data.empty()) os << "; " << degenerate_data;
  return os.str();
}

namespace {

using Root = std::pair<TowerElem, TowerElem>;  // (lambda : mu)

int idx2(int i, int j) {
  if (i > j) std::swap(i, j);
  static const int t[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  return t[i][j];
}

int comp_degree(const std::array<TowerElem, 10>& c) {
  for (int k = 0; k < 6; ++k)
    if (!c[k].is_zero()) return 2;
  for (int k = 6; k < 9; ++k)
    if (!c[k].is_zero()) return 1;
  return c[9].is_zero() ? -1 : 0;
}

void check_homogeneous(const QuadMap& F) {
  for (const auto* c : {&F.a, &F.b}) {
    int d = comp_degree(*c);
    if (d == 0) throw NotHomogeneous("component is a nonzero constant");
    for (int k = 0; k < 10; ++k) {
      int kd = k < 6 ? 2 : (k < 9 ? 1 : 0);
      if (kd != d && !(*c)[k].is_zero()) throw NotHomogeneous("component mixes degrees");
    }
  }
}

Vec3 lin_part(const std::array<TowerElem, 10>& c) { return {c[6], c[7], c[8]}; }

TargetAut tgt_lin(const TowerElem& a, const TowerElem& b, const TowerElem& c, const TowerElem& d) {
  TargetAut t;
  t.N = {{{a, b}, {c, d}}};
  return t;
}

SourceAut src_mat(const Mat3& m) {
  SourceAut s;
  s.M = m;
  return s;
}

Mat3 identity3() {
  Mat3 m;
  for (int i = 0; i < 3; ++i) m[i][i] = 1;
  return m;
}

struct Builder {
  QuadMap F;
  WitnessChain chain;
  TowerCtx ctx;
  const SqrtHints* hints = nullptr;

  void src(const SourceAut& s, const std::string& label) {
    if (s == SourceAut::identity()) return;
    F = compose_source(F, s);
    chain.source(s, label);
  }
  void tgt(const TargetAut& t, const std::string& label) {
    if (t == TargetAut::identity()) return;
    F = compose_target(t, F);
    chain.target(t, label);
  }
  void forms(const Vec3& X_, const Vec3& Y_, const Vec3& Z_, const std::string& label) {
    src(source_from_forms(X_, Y_, Z_), label);
  }
  TowerElem root(const TowerElem& e) {
    auto r = sqrt(e, ctx, hints);
    ctx = r.ctx;
    return r.value;
  }
  TowerElem S(int comp, int i, int j) const {
    const auto& c = comp == 0 ? F.a : F.b;
    TowerElem v = c[idx2(i, j)];
    return i == j ? v : v * TowerElem(Rational(1, 2));
  }
  // old x_i = new x_i + c * new x_j
  void shear(int i, int j, const TowerElem& c, const std::string& label) {
    Mat3 m = identity3();
    m[i][j] = c;
    src(src_mat(m), label);
  }
  void swap_vars(int i, int j, const std::string& label) {
    Mat3 m = identity3();
    m[i][i] = 0;
    m[j][j] = 0;
    m[i][j] = 1;
    m[j][i] = 1;
    src(src_mat(m), label);
  }
  void scale_var(int i, const TowerElem& s, const std::string& label) {
    Mat3 m = identity3();
    m[i][i] = s;
    src(src_mat(m), label);
  }
};

// Brings the first component, a nondegenerate form in the listed variables
// (and free of the others), to a sum of unit squares.  Scales the first
// component on the target.
void sum_of_squares(Builder& b, std::vector<int> vars) {
  std::vector<TowerElem> diag;
  for (size_t k = 0; k < vars.size(); ++k) {
    int v = vars[k];
    if (b.S(0, v, v).is_zero()) {
      bool done = false;
      for (size_t l = k + 1; l < vars.size() && !done; ++l)
        if (!b.S(0, vars[l], vars[l]).is_zero()) {
          b.swap_vars(v, vars[l], "swap coordinates");
          done = true;
        }
      for (size_t l = k + 1; l < vars.size() && !done; ++l)
        if (!b.S(0, v, vars[l]).is_zero()) {
          b.shear(vars[l], v, 1, "shear to create a square term");
          done = true;
        }
      if (!done) throw std::logic_error("sum_of_squares: degenerate form");
    }
    TowerElem piv = b.S(0, v, v);
    Mat3 m = identity3();
    bool any = false;
    for (size_t l = k + 1; l < vars.size(); ++l) {
      TowerElem c = b.S(0, v, vars[l]);
      if (c.is_zero()) continue;
      m[v][vars[l]] = -c / piv;
      any = true;
    }
    if (any) b.src(src_mat(m), "complete the square");
    diag.push_back(piv);
  }
  TowerElem d0 = diag[0];
  if (!d0.is_one()) b.tgt(tgt_lin(d0.inv(), 0, 0, 1), "normalize the quadratic component");
  Mat3 m = identity3();
  bool any = false;
  for (size_t k = 1; k < vars.size(); ++k) {
    TowerElem r = diag[k] / d0;
    if (r.is_one()) continue;
    m[vars[k]][vars[k]] = b.root(r).inv();
    any = true;
  }
  if (any) b.src(src_mat(m), "scale to unit squares");
}

// Binary form u -> q(s u1 + t u2) as (A, B, C) with q = A s^2 + 2 B s t + C t^2.
std::array<TowerElem, 3> restrict_form(const Mat3& M, const Vec3& u1, const Vec3& u2) {
  return {dot(u1, mat_vec(M, u1)), dot(u1, mat_vec(M, u2)), dot(u2, mat_vec(M, u2))};
}

std::vector<Vec3> kernel_vectors(const Mat3& M) {
  std::vector<Vec3> out;
  for (auto& v : nullspace(to_matrix(M))) out.push_back({v[0], v[1], v[2]});
  return out;
}

std::vector<Vec3> plane_basis(const Vec3& l) {
  Matrix m{{l[0], l[1], l[2]}};
  std::vector<Vec3> out;
  for (auto& v : nullspace(m)) out.push_back({v[0], v[1], v[2]});
  return out;
}

// R = c l l^T for a rank-one symmetric R
std::pair<TowerElem, Vec3> rank_one_split(const Mat3& R) {
  for (int j = 0; j < 3; ++j)
    if (!R[j][j].is_zero()) {
      TowerElem inv = R[j][j].inv();
      return {R[j][j], {R[j][0] * inv, R[j][1] * inv, R[j][2] * inv}};
    }
  throw std::logic_error("rank_one_split: zero diagonal");
}

Vec3 poly_div_linear(const Poly& f, const Vec3& l) {
  auto q = divide_exact(f, linear_poly(l));
  if (!q) throw std::logic_error("expected a linear factor");
  return linear_coeffs(*q);
}

// Lift of a linear form given on the plane l = 0 (values m1, m2 on basis u1, u2).
Vec3 lift_form(const Vec3& l, const Vec3& u1, const Vec3& u2, const TowerElem& m1, const TowerElem& m2) {
  Vec3 u3{};
  for (int k = 0; k < 3; ++k)
    if (!l[k].is_zero()) {
      u3[k] = 1;
      break;
    }
  Mat3 U;
  for (int i = 0; i < 3; ++i) U[i] = {u1[i], u2[i], u3[i]};
  auto Ui = inverse3(U);
  if (!Ui) throw std::logic_error("lift_form: singular basis");
  Vec3 vals{m1, m2, 0};
  Vec3 out;
  for (int j = 0; j < 3; ++j) out[j] = vals[0] * (*Ui)[0][j] + vals[1] * (*Ui)[1][j] + vals[2] * (*Ui)[2][j];
  return out;
}

// restricted form of rank one: kappa * m^2
std::pair<TowerElem, std::array<TowerElem, 2>> rank_one_binary(const std::array<TowerElem, 3>& q) {
  if (!q[0].is_zero()) return {q[0], {1, q[1] / q[0]}};
  return {q[2], {0, 1}};
}

bool proportional(const Vec3& a, const Vec3& b) { return is_zero_vec(cross(a, b)); }

struct PencilData {
  Mat3 Mf, Mg;
  std::array<TowerElem, 4> c;  // c3 l^3 + c2 l^2 m + c1 l m^2 + c0 m^3, stored (c0, c1, c2, c3)
  bool degenerate = false;
};

PencilData pencil_data(const QuadMap& F) {
  PencilData d;
  d.Mf = sym_matrix(F.a);
  d.Mg = sym_matrix(F.b);
  auto D = [&](long l, long m) { return det3(mat_add(mat_scale(d.Mf, l), mat_scale(d.Mg, m))); };
  TowerElem c3 = D(1, 0), c0 = D(0, 1);
  TowerElem s = D(1, 1) - c3 - c0, t = D(1, -1) - c3 + c0;
  TowerElem h(Rational(1, 2));
  d.c = {c0, (s + t) * h, (s - t) * h, c3};
  d.degenerate = d.c[0].is_zero() && d.c[1].is_zero() && d.c[2].is_zero() && d.c[3].is_zero();
  return d;
}

Mat3 member(const PencilData& d, const Root& r) { return mat_add(mat_scale(d.Mf, r.first), mat_scale(d.Mg, r.second)); }

// Roots of the cubic lying in the coefficient field: repeated roots always do.
struct RootStructure {
  std::vector<std::pair<int, int>> profile;
  std::vector<std::pair<Root, int>> rational;  // roots found without extension, with multiplicity
  int infinite_mult = 0;                       // multiplicity of (1:0)
  UPoly finite;                                // dehomogenized in t = lambda / mu
};

RootStructure root_structure(const PencilData& d) {
  RootStructure rs;
  int k = 0;
  while (k < 3 && d.c[3 - k].is_zero()) ++k;
  rs.infinite_mult = k;
  rs.finite = UPoly({d.c[0], d.c[1], d.c[2], d.c[3]});
  std::map<int, int> prof;
  if (k > 0) {
    prof[k] += 1;
    rs.rational.push_back({{1, 0}, k});
  }
  auto parts = squarefree_decomposition(rs.finite);
  for (size_t m = 0; m < parts.size(); ++m) {
    int deg = parts[m].degree();
    if (deg <= 0) continue;
    prof[int(m + 1)] += deg;
    if (m >= 1) {
      // a repeated root of a cubic is unique, so the factor is linear
      rs.rational.push_back({{-parts[m].c[0] / parts[m].c[1], 1}, int(m + 1)});
    } else if (deg == 1) {
      rs.rational.push_back({{-parts[m].c[0] / parts[m].c[1], 1}, 1});
    }
  }
  for (auto& [m, n] : prof) rs.profile.push_back({m, n});
  return rs;
}

std::optional<Vec3> common_kernel(const PencilData& d) {
  Matrix m;
  for (int i = 0; i < 3; ++i) m.push_back({d.Mf[i][0], d.Mf[i][1], d.Mf[i][2]});
  for (int i = 0; i < 3; ++i) m.push_back({d.Mg[i][0], d.Mg[i][1], d.Mg[i][2]});
  auto ns = nullspace(m);
  if (ns.empty()) return std::nullopt;
  return Vec3{ns[0][0], ns[0][1], ns[0][2]};
}

// Binary det of the pencil restricted to a complement of the common kernel.
std::array<TowerElem, 3> binary_det(const PencilData& d, const Vec3& v, std::array<Vec3, 2>* basis) {
  auto comp = complete_basis({v});
  Vec3 u1 = comp[1], u2 = comp[2];
  if (basis) *basis = {u1, u2};
  auto bf = restrict_form(d.Mf, u1, u2), bg = restrict_form(d.Mg, u1, u2);
  // det [[l A + m a, l B + m b], [l B + m b, l C + m c]]
  TowerElem d2 = bf[0] * bf[2] - bf[1] * bf[1];
  TowerElem d0 = bg[0] * bg[2] - bg[1] * bg[1];
  TowerElem d1 = bf[0] * bg[2] + bg[0] * bf[2] - bf[1] * bg[1] * 2;
  return {d0, d1, d2};
}

struct Normalized {
  QuadMap F;
  WitnessChain chain;
  int deg_f, deg_g;
};

// swap / shear so that deg f >= deg g and equal-degree components are independent
Normalized normalize_top(const QuadMap& Ft) {
  Normalized n{Ft, {}, comp_degree(Ft.a), comp_degree(Ft.b)};
  if (n.deg_f < n.deg_g) {
    TargetAut sw = tgt_lin(0, 1, 1, 0);
    n.F = compose_target(sw, n.F);
    n.chain.target(sw, "swap components");
    std::swap(n.deg_f, n.deg_g);
  }
  if (n.deg_f == n.deg_g && n.deg_f > 0) {
    // proportional components?
    int piv = -1;
    for (int k = 0; k < 10; ++k)
      if (!n.F.a[k].is_zero()) {
        piv = k;
        break;
      }
    TowerElem c = n.F.b[piv] / n.F.a[piv];
    bool prop = true;
    for (int k = 0; k < 10 && prop; ++k)
      if (n.F.b[k] != c * n.F.a[k]) prop = false;
    if (prop) {
      TargetAut sh = tgt_lin(1, 0, -c, 1);
      n.F = compose_target(sh, n.F);
      n.chain.target(sh, "cancel the proportional component");
      n.deg_g = -1;
    }
  }
  return n;
}

TopType lower_type(const QuadMap& F, int deg_f, int deg_g) {
  if (deg_f < 0) return TopType::T21;
  if (deg_f == 1) return deg_g < 0 ? TopType::T20 : TopType::T19;
  Mat3 M = sym_matrix(F.a);
  int r = rank(to_matrix(M));
  Vec3 l = lin_part(F.b);
  bool lz = deg_g < 0;
  if (r == 3) {
    if (lz) return TopType::T11;
    auto pb = plane_basis(l);
    auto q = restrict_form(M, pb[0], pb[1]);
    return (q[0] * q[2] - q[1] * q[1]).is_zero() ? TopType::T10 : TopType::T9;
  }
  if (r == 2) {
    if (lz) return TopType::T15;
    Vec3 v = kernel_vectors(M)[0];
    if (!dot(l, v).is_zero()) return TopType::T12;
    return divide_exact(F.f(), linear_poly(l)) ? TopType::T14 : TopType::T13;
  }
  if (lz) return TopType::T18;
  auto [c, m] = rank_one_split(M);
  return proportional(l, m) ? TopType::T17 : TopType::T16;
}

TopType pencil_type(const PencilData& d, PencilProfile* prof) {
  if (d.degenerate) {
    auto v = common_kernel(d);
    if (!v) {
      if (prof) prof->degenerate_data = "no common kernel";
      return TopType::T7;
    }
    auto bd = binary_det(d, *v, nullptr);
    UPoly u({bd[0], bd[1], bd[2]});
    bool dbl;
    if (bd[2].is_zero()) {
      dbl = bd[1].is_zero();
    } else {
      dbl = (bd[1] * bd[1] - bd[0] * bd[2] * 4).is_zero();
    }
    if (prof)
      prof->degenerate_data = "common kernel (" + v->at(0).str() + ":" + v->at(1).str() + ":" + v->at(2).str() +
                              "), restricted det " + (dbl ? "has a double root" : "has distinct roots");
    return dbl ? TopType::T8 : TopType::T6;
  }
  auto rs = root_structure(d);
  if (prof) prof->root_profile = rs.profile;
  int maxm = 1;
  for (auto& [m, n] : rs.profile) maxm = std::max(maxm, m);
  if (maxm == 1) {
    if (prof)
      for (auto& [r, m] : rs.rational) prof->ranks_at_roots.push_back({m, rank(to_matrix(member(d, r)))});
    return TopType::T1;
  }
  std::optional<TopType> t;
  for (auto& [r, m] : rs.rational) {
    int rk = rank(to_matrix(member(d, r)));
    if (prof) prof->ranks_at_roots.push_back({m, rk});
    if (m == 2) t = rk == 2 ? TopType::T2 : TopType::T3;
    if (m == 3) t = rk == 2 ? TopType::T4 : TopType::T5;
  }
  if (!t) throw std::logic_error("pencil_type: repeated root not found");
  return *t;
}

Root other_member(const Root& r) { return r.second.is_zero() ? Root{0, 1} : Root{1, 0}; }

TargetAut members_target(const Root& a, const Root& b) { return tgt_lin(a.first, a.second, b.first, b.second); }

void check_result(const Builder& b, TopType t) {
  if (b.F != top_normal_form(t))
    throw std::logic_error("top witness for " + type_name(t) + " ended at " + b.F.str());
}

// ---- witness builders; each starts from a normalized pair ----

void build_t1(Builder& b, const std::array<Root, 3>& r) {
  PencilData d = pencil_data(b.F);
  std::array<Vec3, 3> v;
  for (int k = 0; k < 3; ++k) v[k] = kernel_vectors(member(d, r[k]))[0];
  TowerElem D = r[0].first * r[1].second - r[1].first * r[0].second;
  TowerElem c1 = (r[2].first * r[1].second - r[1].first * r[2].second) / D;
  TowerElem c2 = (r[0].first * r[2].second - r[2].first * r[0].second) / D;
  b.tgt(tgt_lin(c2 * r[1].first, c2 * r[1].second, -c1 * r[0].first, -c1 * r[0].second), "degenerate members");
  Mat3 V;
  for (int i = 0; i < 3; ++i) V[i] = {v[0][i], v[1][i], v[2][i]};
  b.src(src_mat(V), "critical points at infinity to coordinate points");
  Mat3 m = identity3();
  m[0][0] = b.root(b.S(0, 0, 0)).inv();
  m[1][1] = b.root(b.S(1, 1, 1)).inv();
  m[2][2] = b.root(b.S(0, 2, 2)).inv();
  b.src(src_mat(m), "unit coefficients");
}

void build_t2(Builder& b, const Root& rd, const Root& rs) {
  PencilData d = pencil_data(b.F);
  Vec3 vd = kernel_vectors(member(d, rd))[0], vs = kernel_vectors(member(d, rs))[0];
  b.tgt(members_target(rd, rs), "double and simple members");
  // columns vs, vd and a completing vector
  Mat3 V;
  Vec3 w{};
  for (int k = 0; k < 3; ++k) {
    Vec3 e{};
    e[k] = 1;
    if (!det3(Mat3{vs, vd, e}).is_zero()) {
      w = e;
      break;
    }
  }
  for (int i = 0; i < 3; ++i) V[i] = {vs[i], vd[i], w[i]};
  b.src(src_mat(V), "kernels to coordinate axes");
  TowerElem b23 = b.F.b[4], b33 = b.F.b[5];
  if (!b33.is_zero()) b.shear(1, 2, -b33 / b23, "remove z^2 from the second component");
  TowerElem a11 = b.F.a[0], a13 = b.F.a[2];
  if (!a13.is_zero()) b.shear(0, 2, -a13 / (a11 * 2), "complete the square");
  TowerElem a33 = b.F.a[5];
  b23 = b.F.b[4];
  TowerElem ra = b.root(a11), rc = b.root(a33);
  Mat3 m = identity3();
  m[0][0] = ra.inv();
  m[2][2] = rc.inv();
  m[1][1] = rc / b23;
  b.src(src_mat(m), "unit coefficients");
}

void build_t3_prenormal(Builder& b, const Root& rd, const Root& rs) {
  PencilData d = pencil_data(b.F);
  Vec3 v = kernel_vectors(member(d, rs))[0];
  auto [c, l] = rank_one_split(member(d, rd));
  (void)c;
  b.tgt(members_target(rs, rd), "rank-two and rank-one members");
  auto pb = plane_basis(l);
  Mat3 V;
  for (int i = 0; i < 3; ++i) V[i] = {pb[0][i], pb[1][i], v[i]};
  b.src(src_mat(V), "kernel of the rank-two member to the z axis");
}

void build_t4(Builder& b, const Root& rt) {
  PencilData d = pencil_data(b.F);
  Root ro = other_member(rt);
  Vec3 v = kernel_vectors(member(d, rt))[0];
  b.tgt(members_target(ro, rt), "triple-root member second");
  Mat3 Mf = sym_matrix(b.F.a);
  Vec3 L1 = mat_vec(Mf, v);
  Vec3 L2 = poly_div_linear(b.F.g(), L1);
  auto pb = plane_basis(L1);
  auto q = restrict_form(Mf, pb[0], pb[1]);
  TowerElem m1 = dot(L2, pb[0]), m2 = dot(L2, pb[1]);
  TowerElem kappa = !m1.is_zero() ? q[0] / (m1 * m1) : q[2] / (m2 * m2);
  TowerElem t = (kappa * 4).inv();
  b.tgt(tgt_lin(t, 0, 0, 1), "scale the first component");
  TowerElem h(Rational(1, 2));
  Vec3 Xf{(L2[0] - L1[0]) * h, (L2[1] - L1[1]) * h, (L2[2] - L1[2]) * h};
  Poly rest = b.F.f() - linear_poly(Xf) * linear_poly(Xf);
  Vec3 Zf = poly_div_linear(rest, L1);
  for (auto& e : Zf) e *= h;
  b.forms(Xf, L1, Zf, "coordinates adapted to the triple point");
}

void build_t5(Builder& b, const Root& rt) {
  PencilData d = pencil_data(b.F);
  Root ro = other_member(rt);
  auto [c, l] = rank_one_split(member(d, rt));
  b.tgt(tgt_lin(ro.first, ro.second, rt.first / c, rt.second / c), "rank-one member as a square");
  Mat3 Mf = sym_matrix(b.F.a);
  auto pb = plane_basis(l);
  auto [kappa, m] = rank_one_binary(restrict_form(Mf, pb[0], pb[1]));
  b.tgt(tgt_lin(kappa.inv(), 0, 0, 1), "scale the first component");
  Vec3 Xf = lift_form(l, pb[0], pb[1], m[0], m[1]);
  Poly rest = b.F.f() - linear_poly(Xf) * linear_poly(Xf);
  Vec3 Yf = poly_div_linear(rest, l);
  TowerElem h(Rational(1, 2));
  for (auto& e : Yf) e *= h;
  b.forms(Xf, Yf, l, "coordinates adapted to the line");
}

void build_t6_t8(Builder& b, TopType t) {
  PencilData d = pencil_data(b.F);
  Vec3 v = *common_kernel(d);
  auto bd = binary_det(d, v, nullptr);
  if (t == TopType::T6) {
    std::vector<Root> roots;
    if (bd[2].is_zero()) {
      roots.push_back({1, 0});
      roots.push_back({-bd[0] / bd[1], 1});
    } else {
      Poly u = UPoly({bd[0], bd[1], bd[2]}).to_poly(T);
      auto rl = roots_in_tower(u, T, b.ctx);
      b.ctx = rl.ctx;
      for (auto& [r, m] : rl.roots) roots.push_back({r, 1});
    }
    auto [c1, l1] = rank_one_split(member(d, roots[0]));
    auto [c2, l2] = rank_one_split(member(d, roots[1]));
    b.tgt(tgt_lin(roots[0].first / c1, roots[0].second / c1, roots[1].first / c2, roots[1].second / c2),
          "rank-one members as squares");
    auto basis = complete_basis({l1, l2});
    b.forms(l1, l2, basis[2], "square roots as coordinates");
    return;
  }
  Root rd;
  if (bd[2].is_zero())
    rd = {1, 0};
  else
    rd = {-bd[1] / (bd[2] * 2), 1};
  Root ro = other_member(rd);
  auto [c, l] = rank_one_split(member(d, rd));
  b.tgt(tgt_lin(ro.first, ro.second, rd.first / c, rd.second / c), "double member as a square");
  Vec3 Lp = poly_div_linear(b.F.f(), l);
  auto basis = complete_basis({Lp, l});
  b.forms(Lp, l, basis[2], "factor coordinates");
}

void build_t7(Builder& b) {
  PencilData d = pencil_data(b.F);
  Vec3 vf = kernel_vectors(d.Mf)[0], vg = kernel_vectors(d.Mg)[0];
  Vec3 L = cross(vf, vg);
  Vec3 l = poly_div_linear(b.F.f(), L), k = poly_div_linear(b.F.g(), L);
  b.forms(l, L, k, "common factor as y");
}

void build_lower(Builder& b, TopType t) {
  Mat3 M = sym_matrix(b.F.a);
  Vec3 l = lin_part(b.F.b);
  switch (t) {
    case TopType::T9: {
      auto basis = complete_basis({l});
      b.forms(l, basis[1], basis[2], "linear component as x");
      // remove x*y, x*z
      TowerElem A = b.S(0, 1, 1), B = b.S(0, 1, 2), C = b.S(0, 2, 2);
      TowerElem bx = b.S(0, 0, 1), cx = b.S(0, 0, 2);
      TowerElem det = A * C - B * B;
      TowerElem al = -(C * bx - B * cx) / det, be = -(A * cx - B * bx) / det;
      Mat3 m = identity3();
      m[1][0] = al;
      m[2][0] = be;
      if (!al.is_zero() || !be.is_zero()) b.src(src_mat(m), "separate x");
      TowerElem a0 = b.F.a[0];
      if (!a0.is_one()) b.tgt(tgt_lin(a0.inv(), 0, 0, 1), "normalize x^2");
      A = b.S(0, 1, 1);
      B = b.S(0, 1, 2);
      C = b.S(0, 2, 2);
      Vec3 Yf, Zf;
      if (A.is_zero()) {
        Yf = {0, B * 2, C};
        Zf = {0, 0, 1};
      } else {
        TowerElem s = b.root(B * B - A * C);
        TowerElem s1 = (-B + s) / A, s2 = (-B - s) / A;
        Yf = {0, A, -A * s1};
        Zf = {0, 1, -s2};
      }
      b.forms({1, 0, 0}, Yf, Zf, "isotropic lines as y, z");
      return;
    }
    case TopType::T10: {
      auto pb = plane_basis(l);
      auto [kappa, m] = rank_one_binary(restrict_form(M, pb[0], pb[1]));
      b.tgt(tgt_lin(kappa.inv(), 0, 0, 1), "scale the quadratic component");
      Vec3 Xf = lift_form(l, pb[0], pb[1], m[0], m[1]);
      Poly rest = b.F.f() - linear_poly(Xf) * linear_poly(Xf);
      Vec3 Zf = poly_div_linear(rest, l);
      b.forms(Xf, l, Zf, "tangent coordinates");
      return;
    }
    case TopType::T11:
      sum_of_squares(b, {0, 1, 2});
      return;
    case TopType::T12: {
      Vec3 v = kernel_vectors(M)[0];
      auto pb = plane_basis(v);
      b.forms(pb[0], pb[1], l, "vertex direction as z");
      sum_of_squares(b, {0, 1});
      return;
    }
    case TopType::T13: {
      Vec3 v = kernel_vectors(M)[0];
      auto pb = plane_basis(v);
      Vec3 Y0 = proportional(pb[0], l) ? pb[1] : pb[0];
      auto basis = complete_basis({l, Y0});
      b.forms(l, Y0, basis[2], "linear component as x");
      TowerElem A = b.S(0, 0, 0), B = b.S(0, 0, 1), C = b.S(0, 1, 1);
      if (!B.is_zero()) b.shear(1, 0, -B / C, "complete the square");
      TowerElem a = b.F.a[0];
      b.tgt(tgt_lin(a.inv(), 0, 0, 1), "normalize x^2");
      TowerElem r = b.F.a[3];
      if (!r.is_one()) b.scale_var(1, b.root(r).inv(), "unit y^2");
      (void)A;
      return;
    }
    case TopType::T14: {
      Vec3 k = poly_div_linear(b.F.f(), l);
      auto basis = complete_basis({l, k});
      b.forms(l, k, basis[2], "factors as coordinates");
      return;
    }
    case TopType::T15:
    case TopType::T18: {
      if (t == TopType::T18) {
        auto [c, m] = rank_one_split(M);
        b.tgt(tgt_lin(c.inv(), 0, 0, 1), "normalize the square");
        auto basis = complete_basis({m});
        b.forms(m, basis[1], basis[2], "square root as x");
        return;
      }
      Vec3 v = kernel_vectors(M)[0];
      auto pb = plane_basis(v);
      auto basis = complete_basis({pb[0], pb[1]});
      b.forms(pb[0], pb[1], basis[2], "vertex direction as z");
      sum_of_squares(b, {0, 1});
      return;
    }
    case TopType::T16: {
      auto [c, m] = rank_one_split(M);
      b.tgt(tgt_lin(c.inv(), 0, 0, 1), "normalize the square");
      auto basis = complete_basis({m, l});
      b.forms(m, l, basis[2], "square root as x, linear component as y");
      return;
    }
    case TopType::T17: {
      auto [c, m] = rank_one_split(M);
      // c m^2 = c' l^2
      int j = 0;
      while (l[j].is_zero()) ++j;
      TowerElem ratio = m[j] / l[j];
      b.tgt(tgt_lin((c * ratio * ratio).inv(), 0, 0, 1), "normalize the square");
      auto basis = complete_basis({l});
      b.forms(l, basis[1], basis[2], "linear component as x");
      return;
    }
    case TopType::T19: {
      Vec3 f1 = lin_part(b.F.a);
      auto basis = complete_basis({f1, l});
      b.forms(f1, l, basis[2], "components as coordinates");
      return;
    }
    case TopType::T20: {
      Vec3 f1 = lin_part(b.F.a);
      auto basis = complete_basis({f1});
      b.forms(f1, basis[1], basis[2], "component as x");
      return;
    }
    case TopType::T21:
      return;
    default:
      throw std::logic_error("build_lower: not a lower type");
  }
}

struct T1RootResult {
  std::vector<Root> roots;
  TowerCtx ctx;
  std::string why;
};

T1RootResult t1_roots(const PencilData& d, const Policy& policy, TowerCtx ctx, const SqrtHints* hints) {
  T1RootResult out;
  auto rs = root_structure(d);
  std::vector<Root> roots;
  UPoly u = rs.finite;
  if (rs.infinite_mult == 1) roots.push_back({1, 0});
  if (u.degree() == 3) {
    bool base = true;
    for (auto& c : u.c) base = base && c.is_base();
    std::vector<TowerElem> qroots;
    if (base) qroots = gaussian_roots(u.c);
    if (qroots.empty()) {
      if (!base) {
        out.why = "the determinant cubic has coefficients outside Q(i) and no root in the coefficient field";
        return out;
      }
      if (!policy.allow_cubic) {
        out.why = "splitting the determinant cubic needs a cubic extension, which the policy forbids";
        return out;
      }
      if (ctx.top()) {
        out.why = "the input already uses radicals; a cubic level must sit directly over Q(i)";
        return out;
      }
      UPoly mu = u.monic();
      ctx = ctx.adjoin_cubic({mu.c[0], mu.c[1], mu.c[2]});
      TowerElem th = TowerElem::generator(ctx.top());
      roots.push_back({th, 1});
      u = divmod(mu, UPoly({-th, 1})).first;
    } else {
      roots.push_back({qroots[0], 1});
      u = divmod(u, UPoly({-qroots[0], 1})).first;
    }
  }
  if (u.degree() == 2) {
    auto sq = sqrt(u.c[1] * u.c[1] - u.c[0] * u.c[2] * 4, ctx, hints);
    ctx = sq.ctx;
    TowerElem den = (u.c[2] * 2).inv();
    roots.push_back({(-u.c[1] + sq.value) * den, 1});
    roots.push_back({(-u.c[1] - sq.value) * den, 1});
  } else if (u.degree() == 1) {
    roots.push_back({-u.c[0] / u.c[1], 1});
  }
  // members f and g first, so pairs already in normal position keep their coordinates
  auto key = [](const Root& r) { return r.first.is_zero() ? 0 : (r.second.is_zero() ? 1 : 2); };
  std::stable_sort(roots.begin(), roots.end(), [&](const Root& a, const Root& b) { return key(a) < key(b); });
  out.roots = roots;
  out.ctx = ctx;
  return out;
}

}  // namespace

Poly pencil_cubic(const QuadMap& Ft) {
  check_homogeneous(Ft);
  if (comp_degree(Ft.a) != 2 || comp_degree(Ft.b) != 2) throw DegreeMismatch("pencil_cubic needs two quadratic forms");
  PencilData d = pencil_data(Ft);
  Poly L = Poly::var(Lambda), Mv = Poly::var(Mu);
  return L.pow(3).scaled(d.c[3]) + (L.pow(2) * Mv).scaled(d.c[2]) + (L * Mv.pow(2)).scaled(d.c[1]) +
         Mv.pow(3).scaled(d.c[0]);
}

TopType top_type(const QuadMap& Ft) {
  check_homogeneous(Ft);
  Normalized n = normalize_top(Ft);
  if (n.deg_f == 2 && n.deg_g == 2) return pencil_type(pencil_data(n.F), nullptr);
  return lower_type(n.F, n.deg_f, n.deg_g);
}

TopClassification classify_top(const QuadMap& Ft, const Policy& policy, const TowerCtx& ctx0, const SqrtHints* outer) {
  check_homogeneous(Ft);
  TopClassification out;
  Normalized n = normalize_top(Ft);
  TowerCtx ctx(ctx0.top(), policy.max_depth);
  for (const auto* c : {&Ft.a, &Ft.b})
    for (auto& e : *c) ctx = ctx.absorb(e);
  bool pencil = n.deg_f == 2 && n.deg_g == 2;
  PencilData d;
  if (pencil) {
    d = pencil_data(n.F);
    out.profile.det_cubic = pencil_cubic(n.F);
    out.type = pencil_type(d, &out.profile);
  } else {
    out.type = lower_type(n.F, n.deg_f, n.deg_g);
    out.profile.degenerate_data = "lower degree pair";
  }
  out.ctx = ctx;
  try {
    auto run = [&](const SqrtHints* hints) {
      Builder b{n.F, n.chain, ctx, hints};
      RootStructure rs;
      if (pencil && out.type != TopType::T1 && !d.degenerate) rs = root_structure(d);
      auto find = [&](int mult) {
        for (auto& [r, m] : rs.rational)
          if (m == mult) return r;
        throw std::logic_error("missing root");
      };
      auto simple = [&]() {
        for (auto& [r, m] : rs.rational)
          if (m == 1) return r;
        throw std::logic_error("missing simple root");
      };
      switch (out.type) {
        case TopType::T1: {
          auto rr = t1_roots(d, policy, b.ctx, hints);
          if (rr.roots.empty()) throw CubicNotAllowed(rr.why);
          b.ctx = rr.ctx;
          build_t1(b, {rr.roots[0], rr.roots[1], rr.roots[2]});
          break;
        }
        case TopType::T2:
          build_t2(b, find(2), simple());
          break;
        case TopType::T3:
          build_t3_prenormal(b, find(2), simple());
          sum_of_squares(b, {0, 1});
          {
            TowerElem c = b.F.b[5];
            if (!c.is_one()) b.tgt(tgt_lin(1, 0, 0, c.inv()), "normalize z^2");
          }
          break;
        case TopType::T4:
          build_t4(b, find(3));
          break;
        case TopType::T5:
          build_t5(b, find(3));
          break;
        case TopType::T6:
        case TopType::T8:
          build_t6_t8(b, out.type);
          break;
        case TopType::T7:
          build_t7(b);
          break;
        default:
          build_lower(b, out.type);
      }
      check_result(b, out.type);
      return b;
    };
    Builder res = outer ? run(outer) : with_d5([&](SqrtHints& h) { return run(&h); });
    out.witness = res.chain;
    out.ctx = res.ctx;
  } catch (const CubicNotAllowed& e) {
    out.note = e.what();
  } catch (const TowerDepthExceeded& e) {
    out.note = e.what();
  }
  return out;
}

TopClassification classify_top(const QuadMap& Ft, const Policy& policy, const TowerCtx& ctx0) {
  return classify_top(Ft, policy, ctx0, nullptr);
}

WitnessChain t3_prenormal(const QuadMap& Ft) {
  check_homogeneous(Ft);
  Normalized n = normalize_top(Ft);
  if (n.deg_f != 2 || n.deg_g != 2) throw DegreeMismatch("t3_prenormal needs two quadratic forms");
  PencilData d = pencil_data(n.F);
  if (pencil_type(d, nullptr) != TopType::T3) throw std::invalid_argument("t3_prenormal: not the line-and-point type");
  auto rs = root_structure(d);
  Root rd, rsim;
  for (auto& [r, m] : rs.rational) (m == 2 ? rd : rsim) = r;
  Builder b{n.F, n.chain, TowerCtx(), nullptr};
  build_t3_prenormal(b, rd, rsim);
  return b.chain;
}

}  // namespace qmap
