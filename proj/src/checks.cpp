#include "qmap/checks.hpp"

#include <map>
#include <sstream>

#include "qmap/expr.hpp"
#include "qmap/random.hpp"

namespace qmap {

namespace {

Check mk(const std::string& suite, const std::string& name, bool ok, const std::string& detail = "",
         bool info = false) {
  return Check{suite, name, ok, detail, info};
}

std::string triple(const Census& c) {
  std::ostringstream os;
  os << "(" << c.cusps << "," << c.double_cusps << "," << c.nodes << ")";
  if (c.intersections) os << " intersections " << c.intersections;
  return os.str();
}

std::vector<Check> resultants() {
  std::vector<Check> out;
  for (auto& r : verify_resultant_identities())
    out.push_back(mk("resultants", r.name, r.sign != 0,
                     r.sign == 1 ? "exact" : r.sign == -1 ? "equal up to sign" : "mismatch"));
  return out;
}

std::vector<Check> idempotence() {
  std::vector<Check> out;
  for (int k = 1; k <= 64; ++k) {
    QuadMap F = representative(k);
    Reduction r = reduce(F);
    AffineClass want = representative_class(k);
    bool ok = r.cls && same_class(*r.cls, want) && r.witness && verify_witness(F, canonical_form(*r.cls), *r.witness).ok;
    out.push_back(mk("idempotence", "F" + std::to_string(k), ok,
                     r.cls ? r.cls->str() + (r.witness ? "" : " without witness: " + r.reason) : "unclassified: " + r.reason));
  }
  return out;
}

std::vector<Check> census_matrix() {
  std::vector<Check> out;
  auto counts = [&](const std::string& name, const Census& c, int cu, int dc, int no) {
    out.push_back(mk("census", name, c.cusps == cu && c.double_cusps == dc && c.nodes == no, triple(c)));
  };
  counts("item 1", census_discrete(1), 6, 0, 4);
  counts("item 2", census_discrete(2), 4, 1, 3);
  counts("item 3", census_family1(1, 4), 2, 2, 2);
  counts("item 8", census_discrete(8), 4, 0, 2);
  counts("item 9", census_discrete(9), 2, 1, 1);
  counts("item 16", census_discrete(16), 3, 0, 0);
  Census c22 = census_discrete(22);
  counts("item 22", c22, 2, 0, 1);
  UPoly cp = UPoly::from(c22.cusp_poly, T);
  out.push_back(mk("census", "item 22 cusp at t=-1/2", cp.eval(TowerElem(Rational(-1, 2))).is_zero(),
                   "cusp polynomial " + c22.cusp_poly.str()));
  counts("item 23", census_discrete(23), 0, 1, 0);
  Census c10 = census_discrete(10), c27 = census_discrete(27);
  out.push_back(mk("census", "item 10", c10.cusps == 1, triple(c10)));
  out.push_back(mk("census", "item 27", c27.cusps == 1, triple(c27)));
  Census a = family4_structure(Rational(1, 4)), b = family4_structure(1);
  out.push_back(mk("census", "family 4 at A=1/4", a.cusps == 3 && a.intersections == 3, triple(a)));
  out.push_back(mk("census", "family 4 at A=1", b.cusps == 2 && b.intersections == 2, triple(b)));
  return out;
}

QuadMap th2_form(const TowerElem& alpha, const TowerElem& beta) {
  QuadMap F = parse_map("x^2+z^2+y", "y^2+z^2");
  F.b[6] = alpha;
  F.b[8] = beta;
  return F;
}

std::vector<Check> exceptional() {
  std::vector<Check> out;
  TowerElem h = h0(Rational(1, 16), Rational(-1, 16)), h1 = h0(1, 1);
  out.push_back(mk("exceptional", "H0(1/16,-1/16) = 0", h.is_zero(), h.str()));
  out.push_back(mk("exceptional", "H0(1,1) = 153", h1 == TowerElem(153), h1.str()));
  TowerElem i = TowerElem::i();
  struct P {
    const char* name;
    TowerElem alpha, beta;
  } ps[] = {{"(alpha^2,beta^2) = (1,4)", 1, 2},
            {"(alpha^2,beta^2) = (-4,-1)", i * 2, i},
            {"(alpha^2,beta^2) = (-1/4,1/4)", i * Rational(1, 2), Rational(1, 2)}};
  for (auto& p : ps) {
    QuadMap F = th2_form(p.alpha, p.beta);
    Reduction r = reduce(F);
    bool ok = r.cls && *r.cls == AffineClass::discrete(3) && r.witness &&
              verify_witness(F, canonical_form(*r.cls), *r.witness).ok;
    out.push_back(mk("exceptional", p.name + std::string(" -> F3"), ok, r.cls ? r.cls->str() : r.reason));
  }
  auto fam = [](const TowerElem& A, const TowerElem& B) {
    return canonical_form(AffineClass::family(AffineClass::Family1, {A, B}));
  };
  QuadMap F14 = fam(1, 4), Fq = fam(Rational(-1, 4), Rational(1, 4)), F41 = fam(-4, -1);
  TowerCtx ctx;
  auto eq = [&](const char* name, const QuadMap& lhs_of, const char* s1, const char* s2, const char* s3, const char* p,
                const char* q, const QuadMap& want, bool info) {
    QuadMap got = conjugate(lhs_of, parse_source(s1, s2, s3, ctx), parse_target(p, q, ctx));
    out.push_back(mk("exceptional", name, got == want, got == want ? "holds" : "gives " + got.str(), info));
  };
  eq("F_{1,4} = (4p+2, 4p-4q+3) o F_{-1/4,1/4} o (-z,-y+1,-x)", Fq, "-z", "-y+1", "-x", "4*p+2", "4*p-4*q+3", F14, false);
  eq("F_{-1/4,1/4} = (-q/4+1/4, -p/4-1/4) o F_{-4,-1} o (y,x,-z-1)", F41, "y", "x", "-z-1", "-q/4+1/4", "-p/4-1/4", Fq,
     false);
  eq("corrected: F_{1,4} = (4p+2, 4p-4q+1) o F_{-1/4,1/4} o (-z,-y+1,-x)", Fq, "-z", "-y+1", "-x", "4*p+2",
     "4*p-4*q+1", F14, true);
  return out;
}

// (P o F o S) with polynomial maps, parameters allowed
std::pair<Poly, Poly> compose_poly(const std::pair<Poly, Poly>& F, const std::array<Poly, 3>& s, const std::array<Poly, 2>& t) {
  PolyWitness ws, wt;
  ws.kind = PolyWitness::Source;
  ws.source_map = s;
  wt.kind = PolyWitness::Target;
  wt.target_map = t;
  return apply_poly_witness(apply_poly_witness(F, ws), wt);
}

std::vector<Check> identities() {
  std::vector<Check> out;
  auto pp = [](const char* s) { return parse_poly(s); };
  Poly al = Poly::var(Alpha), be = Poly::var(Beta), x = Poly::var(X), y = Poly::var(Y), z = Poly::var(Z);
  Poly p = Poly::var(P), q = Poly::var(Q);
  auto report = [&](const std::string& name, const std::pair<Poly, Poly>& got, const std::pair<Poly, Poly>& want, bool info) {
    bool ok = got == want;
    out.push_back(mk("identities", name, ok, ok ? "holds" : "left side gives (" + got.first.str() + ", " + got.second.str() + ")", info));
  };
  {
    std::pair<Poly, Poly> F{pp("x^2+z^2+y"), pp("y^2+z^2") + be * z};
    auto got = compose_poly(F, {z * TowerElem::i(), pp("-y+1/2"), x * TowerElem::i()}, {pp("-p+1/2"), pp("q-p+1/4")});
    report("(-p+1/2, q-p+1/4) o (x^2+z^2+y, y^2+z^2+beta z) o (iz, -y+1/2, ix)", got,
           {pp("x^2+z^2+y"), pp("y^2+z^2") + be * x * TowerElem::i()}, false);
  }
  {
    // both sides multiplied by alpha^2
    std::pair<Poly, Poly> F{pp("x^2+z^2"), pp("y^2+z^2") + al * x + be * z};
    Poly b24 = be * be * TowerElem(Rational(1, 4));
    auto got = compose_poly(F, {al * y, al * x, al * z - be * TowerElem(Rational(1, 2))}, {q + b24, p - b24});
    Poly a2 = al * al;
    report("alpha^2 (q/alpha^2+beta^2/(4alpha^2), p/alpha^2-beta^2/(4alpha^2)) o F o (alpha y, alpha x, alpha z-beta/2) = "
           "alpha^2 (x^2+z^2+y, y^2+z^2-(beta/alpha) x)",
           got, {a2 * pp("x^2+z^2+y"), a2 * pp("y^2+z^2") - al * be * x}, false);
    report("corrected: same with -(beta/alpha) z", got, {a2 * pp("x^2+z^2+y"), a2 * pp("y^2+z^2") - al * be * z}, true);
  }
  {
    // alpha = 0; both sides multiplied by beta^2
    std::pair<Poly, Poly> F{pp("x^2+z^2"), pp("y^2+z^2") + be * z};
    auto got = compose_poly(F, {be * z, be * x * TowerElem::i(), -(be * y)}, {p - q, p});
    Poly b2 = be * be;
    report("beta^2 ((p-q)/beta^2, p/beta^2) o F o (beta z, i beta x, -beta y) = beta^2 (x^2+z^2+y, y^2+z^2)", got,
           {b2 * pp("x^2+z^2+y"), b2 * pp("y^2+z^2")}, false);
  }
  return out;
}

std::vector<Check> structure() {
  std::vector<Check> out;
  for (int k = 1; k <= 64; ++k) {
    StructureReport r = verify_critical_structure(k);
    std::string d = std::to_string(r.checks.size()) + " claims verified";
    for (auto& f : r.failures) d += "; " + f;
    out.push_back(mk("structure", "F" + std::to_string(k), r.ok, d));
  }
  return out;
}

std::vector<Check> merges() {
  std::vector<Check> out;
  for (auto& m : verify_merge_witnesses()) {
    std::string d = m.note;
    for (auto& s : m.steps)
      if (!s.matches) d += (d.empty() ? "" : "; ") + s.step.label + " gives (" + s.result.first.str() + ", " + s.result.second.str() + ")";
    out.push_back(mk("merges", m.name, m.ok, d.empty() ? "verified" : d, !m.as_printed));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"resultants", "idempotence", "census", "exceptional",
                                              "identities", "structure",   "merges"};
  return names;
}

std::vector<Check> run_suite(const std::string& name) {
  if (name == "resultants") return resultants();
  if (name == "idempotence") return idempotence();
  if (name == "census") return census_matrix();
  if (name == "exceptional") return exceptional();
  if (name == "identities") return identities();
  if (name == "structure") return structure();
  if (name == "merges") return merges();
  throw std::invalid_argument("unknown suite: " + name);
}

bool all_pass(const std::vector<Check>& checks) {
  for (auto& c : checks)
    if (!c.ok && !c.informational) return false;
  return true;
}

// ---- fuzzing ----

FuzzFailure fuzz_trial(const AffineClass& start, unsigned trial_seed, const Policy& policy, bool& ok) {
  rnd::Rng rng(trial_seed);
  QuadMap G = canonical_form(start);
  QuadMap F = conjugate(G, rng.affine_source(3, true), rng.affine_target(3, true));
  FuzzFailure f{start.str(), trial_seed, ""};
  ok = false;
  try {
    Reduction r = reduce(F, policy);
    if (!r.cls) f.detail = "unclassified: " + r.reason;
    else if (!same_class(*r.cls, start)) f.detail = "classified as " + r.cls->str();
    else if (!r.witness) f.detail = "no witness: " + r.reason;
    else if (!verify_witness(F, canonical_form(*r.cls), *r.witness).ok) f.detail = "witness does not verify";
    else ok = true;
  } catch (const std::exception& e) {
    f.detail = std::string("exception: ") + e.what();
  }
  if (!ok) f.detail += " on (" + F.f().str() + ", " + F.g().str() + ")";
  return f;
}

FuzzSummary fuzz_class(const AffineClass& start, unsigned seed, int count, const Policy& policy) {
  FuzzSummary s;
  for (int i = 0; i < count; ++i) {
    bool ok;
    FuzzFailure f = fuzz_trial(start, seed * 1000003u + unsigned(i), policy, ok);
    ++s.trials;
    if (ok) ++s.stable;
    else s.failures.push_back(f);
  }
  return s;
}

FuzzSummary fuzz_random(unsigned seed, int count, const Policy& policy) {
  rnd::Rng pick(seed);
  static const Rational vals[] = {Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2), Rational(-1, 3), Rational(3)};
  auto param = [&] {
    const Rational& r = vals[pick.small(0, 6)];
    return pick.small(0, 3) == 0 ? TowerElem(0, r) : TowerElem(r);
  };
  FuzzSummary s;
  for (int i = 0; i < count; ++i) {
    AffineClass start;
    long which = pick.small(0, 67);
    if (which < 64) {
      start = representative_class(int(which) + 1);
    } else if (which == 64 || which == 65) {
      TowerElem A = param(), B = param();
      if (is_exceptional_pair(A, B)) {
        start = AffineClass::discrete(3);
      } else {
        start = AffineClass::family(h0(A, B).is_zero() ? AffineClass::Family2 : AffineClass::Family1, {A, B});
      }
    } else if (which == 66) {
      TowerElem A = param();
      start = A == TowerElem(1) ? AffineClass::discrete(5) : AffineClass::family(AffineClass::Family4, {A});
    } else {
      start = AffineClass::family(AffineClass::Family8, {param()});
    }
    bool ok;
    FuzzFailure f = fuzz_trial(start, seed * 1000003u + unsigned(i), policy, ok);
    ++s.trials;
    if (ok) ++s.stable;
    else s.failures.push_back(f);
  }
  return s;
}

}  // namespace qmap
