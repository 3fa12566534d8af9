#include "qmap/topo.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qmap/expr.hpp"

namespace qmap {

namespace {

// topological item of each representative F_1..F_64
const TopoIndex kTopo[65] = {
    {0, 0},
    {1, 0},  {2, 0},  {3, 0},  {4, 0},  {5, 0},  {6, 0},  {7, 0},  {8, 0},  {9, 0},  {10, 0},
    {11, 0}, {12, 0}, {13, 0}, {14, 0}, {15, 0}, {16, 0}, {17, 0}, {18, 0}, {19, 0}, {20, 0},
    {21, 0}, {22, 0}, {23, 0}, {24, 'a'}, {25, 0}, {26, 0}, {27, 0}, {28, 'a'}, {29, 0}, {30, 0},
    {28, 'b'}, {31, 'a'}, {32, 'a'}, {33, 0}, {34, 0}, {35, 0}, {24, 'b'}, {36, 0}, {37, 0}, {28, 'c'},
    {31, 'b'}, {32, 'b'}, {38, 0}, {39, 0}, {40, 0}, {28, 'd'}, {41, 0}, {42, 0}, {28, 'e'}, {31, 'c'},
    {32, 'c'}, {31, 'd'}, {43, 0}, {44, 'a'}, {45, 0}, {31, 'e'}, {32, 'd'}, {31, 'f'}, {44, 'b'}, {44, 'c'},
    {46, 0}, {31, 'g'}, {44, 'd'}, {47, 0},
};

}  // namespace

std::string TopoIndex::str() const { return std::to_string(index) + (letter ? std::string(1, letter) : ""); }

TopoIndex topo_index_of(int k) {
  if (k < 1 || k > 64) throw std::out_of_range("representative number outside 1..64");
  return kTopo[k];
}

TopoIndex topo_index(const AffineClass& c) {
  switch (c.kind) {
    case AffineClass::Family1: return {1, 0};
    case AffineClass::Family2: return {2, 0};
    case AffineClass::Family4: return {4, 0};
    case AffineClass::Family8: return {8, 0};
    default: return topo_index_of(c.k);
  }
}

std::vector<int> topo_members(int index) {
  std::vector<std::pair<char, int>> m;
  for (int k = 1; k <= 64; ++k)
    if (kTopo[k].index == index) m.push_back({kTopo[k].letter, k});
  std::sort(m.begin(), m.end());
  std::vector<int> out;
  for (auto& [l, k] : m) out.push_back(k);
  return out;
}

// ---- merge witnesses ----

namespace {

PolyWitness source(const Poly& x, const Poly& y, const Poly& z, const std::string& label) {
  PolyWitness w;
  w.kind = PolyWitness::Source;
  w.source_map = {x, y, z};
  w.label = label;
  return w;
}

PolyWitness target(const Poly& p, const Poly& q, const std::string& label) {
  PolyWitness w;
  w.kind = PolyWitness::Target;
  w.target_map = {p, q};
  w.label = label;
  return w;
}

Poly pp(const std::string& s) { return parse_poly(s); }

bool is_affine(const PolyWitness& w) {
  if (w.kind == PolyWitness::Source)
    return std::all_of(w.source_map.begin(), w.source_map.end(), [](auto& p) { return p.total_degree() <= 1; });
  return std::all_of(w.target_map.begin(), w.target_map.end(), [](auto& p) { return p.total_degree() <= 1; });
}

std::string form(const std::pair<Poly, Poly>& F) { return "(" + F.first.str() + ", " + F.second.str() + ")"; }

// applies the steps in order, comparing each result with the stated intermediate form
MergeReport replay(std::string name, int k, std::vector<std::pair<PolyWitness, std::pair<Poly, Poly>>> steps) {
  MergeReport r;
  r.name = std::move(name);
  r.k = k;
  QuadMap F = representative(k);
  std::pair<Poly, Poly> cur{F.f(), F.g()};
  r.ok = true;
  for (auto& [w, expected] : steps) {
    w.role = is_affine(w) ? PolyWitness::Affine : PolyWitness::PolynomialHomeomorphism;
    cur = apply_poly_witness(cur, w);
    MergeStep s{w, cur, form(expected), cur == expected};
    r.ok = r.ok && s.matches;
    r.steps.push_back(std::move(s));
  }
  r.claimed = r.steps.empty() ? form(cur) : r.steps.back().printed;
  return r;
}

MergeReport f24_chain() {
  Poly x = Poly::var(X), y = Poly::var(Y), z = Poly::var(Z);
  QuadMap F = representative(24);
  PolyWitness t1 = target(pp("p/2-q^2/8"), pp("q-1"), "(p/2-q^2/8, q-1)");
  auto after = apply_poly_witness({F.f(), F.g()}, t1);
  // after.first = y*(z + h(2x, y)); solve for h
  std::string note;
  Poly h;  // h(x, y)
  if (auto q = divide_exact(after.first - y * z, y)) {
    h = subst(*q, {{X, x * TowerElem(Rational(1, 2))}});
    note = "solved h(x,y) = " + h.str();
  } else {
    note = "no polynomial h makes the first intermediate form hold";
  }
  Poly h2 = subst(h, {{X, x * Poly(2)}});
  auto r = replay("F24 -> (xy,(y+1)z)", 24,
                  {{t1, {y * (z + h2), pp("y^2+2*x*y+2*x-1")}},
                   {source(x * TowerElem(Rational(1, 2)), y, z - h, "(x/2, y, z-h(x,y))"), {y * z, pp("(x+y-1)*(y+1)")}},
                   {source(pp("z-y+1"), y, x, "(z-y+1, y, x)"), {x * y, pp("(y+1)*z")}}});
  r.note = note;
  return r;
}

MergeReport f28_chain(bool printed) {
  Poly x = Poly::var(X), y = Poly::var(Y), z = Poly::var(Z);
  std::string mid = printed ? "y+2*x*z+z^3" : "y+2*x*z-z^3";
  auto r = replay(printed ? "F28 -> (x,yz) as printed" : "F28 -> (x,yz), z^3 sign corrected", 28,
                  {{source(x * Poly(2), y, z * Poly(2), "(2x, y, 2z)"), {pp("4*x^2+4*y*z"), pp("4*z^2+4*x")}},
                   {target(pp("p/4"), pp("q/4"), "(p/4, q/4)"), {pp("x^2+y*z"), pp("z^2+x")}},
                   {source(pp("x-z^2"), pp(mid), z, "(x-z^2, " + mid + ", z)"), {pp("x^2+y*z"), x}},
                   {target(pp("q"), pp("p-q^2"), "(q, p-q^2)"), {x, y * z}}});
  r.as_printed = printed;
  if (!printed) r.note = "third step uses y+2xz-z^3";
  return r;
}

MergeReport f31_chain() {
  Poly x = Poly::var(X), y = Poly::var(Y), z = Poly::var(Z);
  return replay("F31 -> (x,yz)", 31,
                {{target(pp("p"), pp("p-q"), "(p, p-q)"), {pp("x^2+2*z"), pp("x^2-y^2")}},
                 {source(x, y, pp("(z-x^2)/2"), "(x, y, (z-x^2)/2)"), {z, pp("x^2-y^2")}},
                 {source(pp("(y+z)/2"), pp("(y-z)/2"), x, "((y+z)/2, (y-z)/2, x)"), {x, y * z}}});
}

MergeReport identity_chain() {
  Poly x = Poly::var(X), y = Poly::var(Y), z = Poly::var(Z);
  return replay("F62 identity", 62, {{source(x, y, z, "identity"), {x, y}}});
}

}  // namespace

std::vector<MergeReport> verify_merge_witnesses() {
  return {f24_chain(), f28_chain(true), f28_chain(false), f31_chain(), identity_chain()};
}

// ---- distinguishing facts ----

namespace {

std::vector<std::string> component_facts(const Census& c) {
  std::vector<std::string> out;
  std::string sig = c.signature();
  auto semi = sig.find(';');
  std::string rest = sig.substr(semi + 1);
  std::stringstream ss(rest);
  for (std::string part; std::getline(ss, part, ';');)
    if (!part.empty()) out.push_back(part);
  return out;
}

std::string describe(const std::vector<std::string>& parts) {
  if (parts.empty()) return "nothing";
  std::string s;
  for (auto& p : parts) {
    auto a = p.find('/'), b = p.rfind('/');
    std::string restr = p.substr(a + 1, b - a - 1), crit = p.substr(b + 1);
    s += (s.empty() ? "" : ", ") + p.substr(0, a) + " (" + restr + ", " + crit + " critical points";
    if (restr == "injective" && crit != "0") s += "; its image has a cusp there";
    s += ")";
  }
  return s;
}

}  // namespace

std::string distinguishing_report(int i, int j) {
  if (i == j) throw std::invalid_argument("distinguishing_report needs two different classes");
  if (i < 1 || i > 47 || j < 1 || j > 47) throw std::out_of_range("topological index outside 1..47");
  int ki = topo_members(i).front(), kj = topo_members(j).front();
  Census a = census_discrete(ki), b = census_discrete(kj);
  if (a.signature() == b.signature())
    throw NotDistinguishedByTable("classes " + std::to_string(i) + " and " + std::to_string(j) +
                                  " have equal census signatures (" + a.signature() + "); separated by the table only");
  std::ostringstream os;
  os << "class " << i << " (F" << ki << ") vs class " << j << " (F" << kj << "):\n";
  auto cmp = [&](const char* what, int x, int y) {
    if (x != y) os << "  " << what << ": " << x << " vs " << y << "\n";
  };
  cmp("cusps", a.cusps, b.cusps);
  cmp("double cusps", a.double_cusps, b.double_cusps);
  cmp("nodes", a.nodes, b.nodes);
  cmp("image intersection points", a.intersections, b.intersections);
  auto pa = component_facts(a), pb = component_facts(b);
  if (pa != pb) {
    std::vector<std::string> oa, ob;
    std::set_difference(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(oa));
    std::set_difference(pb.begin(), pb.end(), pa.begin(), pa.end(), std::back_inserter(ob));
    os << "  critical components only in " << i << ": " << describe(oa) << "\n";
    os << "  critical components only in " << j << ": " << describe(ob) << "\n";
  }
  return os.str();
}

}  // namespace qmap
