#include <algorithm>
#include <set>

#include "qmap/expr.hpp"
#include "reducer.hpp"

namespace qmap {

using detail::Reducer;

AffineClass AffineClass::discrete(int k) {
  AffineClass c;
  c.kind = Discrete;
  c.k = k;
  return c;
}

AffineClass AffineClass::family(Kind kind, std::vector<TowerElem> params) {
  AffineClass c;
  c.kind = kind;
  c.k = kind == Family1 ? 1 : kind == Family2 ? 2 : kind == Family4 ? 4 : 8;
  c.params = std::move(params);
  return c;
}

std::string AffineClass::kind_name() const {
  switch (kind) {
    case Family1:
      return "Family1";
    case Family2:
      return "Family2";
    case Family4:
      return "Family4";
    case Family8:
      return "Family8";
    default:
      return "Discrete";
  }
}

std::string AffineClass::str() const {
  if (kind == Discrete) return "Discrete(" + std::to_string(k) + ")";
  std::string s = kind_name() + "(";
  const char* names[2] = {"A=", "B="};
  for (size_t i = 0; i < params.size(); ++i) s += (i ? ", " : "") + std::string(names[i]) + to_literal(params[i]);
  return s + ")";
}

namespace {

const char* const kRepresentatives[64][2] = {
    {"x^2+z^2+2*y", "y^2+z^2+2*x+2*z"},
    {"x^2+z^2+y", "y^2+z^2+4*x+i*z"},
    {"x^2+z^2+y", "y^2+z^2+x+2*z"},
    {"x^2+z^2+y", "y^2+z^2+2*x"},
    {"x^2+z^2+2*y", "y^2+z^2+2*x"},
    {"x^2+z^2+2*y", "y^2+z^2"},
    {"x^2+z^2", "y^2+z^2"},
    {"x^2+z^2+2*y", "y*z+x"},
    {"x^2+z^2+2*y", "y*z+x+sqrt(2)*(1+i)*y"},
    {"x^2+z^2+2*y", "y*z+y"},
    {"x^2+z^2", "y*z+x+y"},
    {"x^2+z^2", "y*z+y"},
    {"x^2+z^2+2*y", "y*z"},
    {"x^2+z^2", "y*z+x"},
    {"x^2+z^2", "y*z"},
    {"x^2+y^2+2*z", "z^2+2*x"},
    {"x^2+y^2", "z^2+2*x"},
    {"x*y+z", "z^2+2*x"},
    {"x*y", "z^2+2*x"},
    {"x^2+y^2+2*z", "z^2"},
    {"x^2+y^2", "z^2"},
    {"x^2+2*y*z", "y^2+2*x*y+2*z"},
    {"x^2+2*y*z", "y^2+2*x*y+3/8*y+2*z"},
    {"x^2+2*y*z", "y^2+2*x*y+2*x"},
    {"x^2+2*y*z", "y^2+2*x*y+2*y"},
    {"x^2+2*y*z", "y^2+2*x*y"},
    {"x^2+2*y*z", "z^2+2*y"},
    {"x^2+2*y*z", "z^2+2*x"},
    {"x^2+2*y*z", "z^2+2*z"},
    {"x^2+2*y*z", "z^2"},
    {"x^2+2*z", "y^2+2*z"},
    {"x^2+z", "y^2+x"},
    {"x^2+z", "y^2"},
    {"x^2+2*y", "y^2+2*x"},
    {"x^2+2*y", "y^2"},
    {"x^2", "y^2"},
    {"x*y", "y*z+z"},
    {"x*y+z", "y*z"},
    {"x*y", "y*z"},
    {"x*y", "y^2+2*z"},
    {"x*y+z", "y^2+x"},
    {"x*y+z", "y^2"},
    {"x*y", "y^2+2*x"},
    {"x*y", "y^2+2*y"},
    {"x*y", "y^2"},
    {"x^2+y*z", "x"},
    {"x^2+y*z", "y"},
    {"x^2+y^2+z^2", "0"},
    {"x^2+y^2", "z"},
    {"x^2+y^2+z", "x"},
    {"x^2+y^2", "x"},
    {"x*y+z", "x"},
    {"x*y", "x"},
    {"x^2+y^2+z", "0"},
    {"x^2+y^2", "0"},
    {"x^2+z", "y"},
    {"x^2", "y"},
    {"x^2+y", "x"},
    {"x^2", "x"},
    {"x^2+y", "0"},
    {"x^2", "0"},
    {"x", "y"},
    {"x", "0"},
    {"0", "0"},
};

QuadMap family_ab(const TowerElem& A, const TowerElem& B) {
  QuadMap F;
  F.a[0] = 1;
  F.a[5] = B;
  F.a[7] = A * 2;
  F.b[3] = A;
  F.b[5] = B;
  F.b[6] = 2;
  F.b[8] = B * 2;
  return F;
}

QuadMap family4_form(const TowerElem& A) {
  QuadMap F;
  F.a[0] = 1;
  F.a[5] = 1;
  F.a[7] = A * 2;
  F.b[3] = A;
  F.b[5] = 1;
  F.b[6] = 2;
  return F;
}

QuadMap family8_form(const TowerElem& A) {
  QuadMap F;
  F.a[0] = 1;
  F.a[5] = 1;
  F.a[7] = 2;
  F.b[4] = 1;
  F.b[6] = 1;
  F.b[7] = A;
  return F;
}

}  // namespace

QuadMap representative(int k) {
  if (k < 1 || k > 64) throw std::out_of_range("representative number outside 1..64");
  TowerCtx ctx;
  return parse_map(kRepresentatives[k - 1][0], kRepresentatives[k - 1][1], ctx);
}

AffineClass representative_class(int k) {
  switch (k) {
    case 1:
      return AffineClass::family(AffineClass::Family1, {1, 1});
    case 2:
      return AffineClass::family(AffineClass::Family2, {Rational(1, 16), Rational(-1, 16)});
    case 4:
      return AffineClass::family(AffineClass::Family4, {Rational(1, 4)});
    case 8:
      return AffineClass::family(AffineClass::Family8, {0});
    default:
      if (k < 1 || k > 64) throw std::out_of_range("representative number outside 1..64");
      return AffineClass::discrete(k);
  }
}

QuadMap canonical_form(const AffineClass& c) {
  switch (c.kind) {
    case AffineClass::Family1:
    case AffineClass::Family2:
      return family_ab(c.params.at(0), c.params.at(1));
    case AffineClass::Family4:
      return family4_form(c.params.at(0));
    case AffineClass::Family8:
      return family8_form(c.params.at(0));
    default:
      return representative(c.k);
  }
}

TopType class_top_type(int k) {
  static const int firsts[][2] = {{1, 1},  {8, 2},  {16, 3}, {22, 4}, {27, 5}, {31, 6}, {37, 7},
                                  {40, 8}, {46, 9}, {47, 10}, {48, 11}, {49, 12}, {50, 13}, {52, 14},
                                  {54, 15}, {56, 16}, {58, 17}, {60, 18}, {62, 19}, {63, 20}, {64, 21}};
  int t = 1;
  for (auto& [first, type] : firsts)
    if (k >= first) t = type;
  return static_cast<TopType>(t);
}

TowerElem h0(const TowerElem& A, const TowerElem& B) {
  TowerElem one(1);
  return (A + B).pow(4) + (A - one).pow(4) + (B + one).pow(4) - A.pow(4) - B.pow(4) - one +
         A * B * (A - B + one) * 124;
}

bool is_exceptional_pair(const TowerElem& A, const TowerElem& B) {
  return (A == TowerElem(1) && B == TowerElem(4)) ||
         (A == TowerElem(Rational(-1, 4)) && B == TowerElem(Rational(1, 4))) ||
         (A == TowerElem(-4) && B == TowerElem(-1));
}

std::vector<std::pair<TowerElem, TowerElem>> family1_orbit(const TowerElem& A, const TowerElem& B) {
  std::vector<std::pair<TowerElem, TowerElem>> out{{A, B}};
  for (size_t i = 0; i < out.size(); ++i) {
    auto [a, b] = out[i];
    std::pair<TowerElem, TowerElem> next[3] = {{-b, -a}, {a.inv(), b / a}, {-a / b, b.inv()}};
    for (auto& n : next)
      if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  return out;
}

std::vector<TowerElem> family4_orbit(const TowerElem& A) {
  std::vector<TowerElem> out{A};
  for (size_t i = 0; i < out.size(); ++i) {
    TowerElem n = out[i].inv();
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  return out;
}

bool same_class(const AffineClass& a, const AffineClass& b) {
  if (a.kind != b.kind || a.k != b.k) return false;
  switch (a.kind) {
    case AffineClass::Family1:
    case AffineClass::Family2: {
      auto orb = family1_orbit(a.params[0], a.params[1]);
      return std::find(orb.begin(), orb.end(), std::make_pair(b.params[0], b.params[1])) != orb.end();
    }
    case AffineClass::Family4: {
      auto orb = family4_orbit(a.params[0]);
      return std::find(orb.begin(), orb.end(), b.params[0]) != orb.end();
    }
    case AffineClass::Family8:
      return a.params[0].pow(4) == b.params[0].pow(4);
    default:
      return true;
  }
}

// ---- Reducer ----

namespace detail {

void Reducer::src(const SourceAut& s, const std::string& label) {
  if (s == SourceAut::identity()) return;
  F = compose_source(F, s);
  chain.source(s, label);
}

void Reducer::tgt(const TargetAut& t, const std::string& label) {
  if (t == TargetAut::identity()) return;
  F = compose_target(t, F);
  chain.target(t, label);
}

void Reducer::src(const Poly& x, const Poly& y, const Poly& z, const std::string& label) {
  src(SourceAut::from_polys(x, y, z), label);
}

void Reducer::tgt(const Poly& p, const Poly& q, const std::string& label) {
  tgt(TargetAut::from_polys(p, q), label);
}

void Reducer::append(const WitnessChain& c) {
  for (auto& s : c.steps) {
    if (s.kind == WitnessStep::Source)
      src(s.src, s.label);
    else
      tgt(s.tgt, s.label);
  }
}

void Reducer::kill_constants() {
  TargetAut t = TargetAut::identity();
  t.u = {-F.a[9], -F.b[9]};
  tgt(t, "drop constants");
}

TowerElem Reducer::root(const TowerElem& e) {
  auto r = sqrt(e, ctx, hints);
  ctx = r.ctx;
  return r.value;
}

TowerElem Reducer::cube_root(const TowerElem& e) {
  if (ctx.top() && !gaussian_cbrt(e))
    throw CubicNotAllowed("a cube root is needed but the field already has radicals; the cubic level must sit directly over Q(i)");
  auto r = cbrt(e, ctx, policy.allow_cubic);
  ctx = r.ctx;
  return r.value;
}

void Reducer::expect(const QuadMap& G, const std::string& what) const {
  if (F != G) throw std::logic_error("reduction to " + what + " ended at " + F.str());
}

}  // namespace detail

// ---- pipeline ----

std::pair<QuadMap, WitnessChain> normalize_pair(const QuadMap& F) {
  Reducer r;
  r.F = F;
  auto prop = [](const QuadMap& G, TowerElem& c) {
    QuadMap t = top_part(G);
    int piv = -1;
    for (int k = 0; k < 10; ++k)
      if (!t.a[k].is_zero()) {
        piv = k;
        break;
      }
    if (piv < 0) return false;
    c = t.b[piv] / t.a[piv];
    for (int k = 0; k < 10; ++k)
      if (t.b[k] != c * t.a[k]) return false;
    return true;
  };
  for (int guard = 0; guard < 8; ++guard) {
    int df = r.F.deg_f(), dg = r.F.deg_g();
    if (df < dg) {
      r.tgt(detail::vq(), detail::vp(), "swap components");
      continue;
    }
    TowerElem c;
    if (df == dg && df >= 1 && prop(r.F, c)) {
      r.tgt(detail::vp(), detail::vq() - detail::vp() * c, "cancel the common top part");
      continue;
    }
    break;
  }
  // constant components carry no information
  if (r.F.deg_g() == 0 || r.F.deg_f() == 0) {
    TargetAut t = TargetAut::identity();
    if (r.F.deg_f() == 0) t.u[0] = -r.F.a[9];
    if (r.F.deg_g() == 0) t.u[1] = -r.F.b[9];
    r.tgt(t, "drop constant component");
  }
  return {r.F, r.chain};
}

namespace {

Reduction run_reduction(const QuadMap& F, const Policy& policy, std::optional<TopType> expected, bool normalize) {
  Reduction out;
  QuadMap G = F;
  WitnessChain pre;
  if (normalize) std::tie(G, pre) = normalize_pair(F);
  TowerCtx ctx0(nullptr, policy.max_depth);
  for (const auto* c : {&F.a, &F.b})
    for (auto& e : *c) ctx0 = ctx0.absorb(e);
  QuadMap top = top_part(G);
  out.top = top_type(top);
  if (expected && out.top != *expected)
    throw TypeMismatch("top type is " + type_name(out.top) + ", expected " + type_name(*expected));
  out.ctx = ctx0;
  try {
    auto res = with_d5([&](SqrtHints& hints) {
      Reducer r;
      r.F = G;
      r.chain = pre;
      r.ctx = ctx0;
      r.hints = &hints;
      r.policy = policy;
      std::optional<AffineClass> cls;
      try {
      if (out.top == TopType::T3) {
        r.append(t3_prenormal(top));
        cls = detail::recipe_t3(r);
      } else {
        auto tc = classify_top(top, policy, r.ctx, &hints);
        if (!tc.witness) throw CubicNotAllowed(tc.note);
        r.ctx = tc.ctx;
        r.append(*tc.witness);
        switch (out.top) {
          case TopType::T1:
            cls = detail::recipe_t1(r);
            break;
          case TopType::T2:
            cls = detail::recipe_t2(r);
            break;
          case TopType::T4:
            cls = detail::recipe_t4(r);
            break;
          case TopType::T5:
            cls = detail::recipe_t5(r);
            break;
          case TopType::T6:
            cls = detail::recipe_t6(r);
            break;
          case TopType::T7:
            cls = detail::recipe_t7(r);
            break;
          case TopType::T8:
            cls = detail::recipe_t8(r);
            break;
          default:
            cls = detail::recipe_lower(r, out.top);
        }
      }
      } catch (const CubicNotAllowed& e) {
        if (r.known) throw detail::ClassWithoutWitness(*r.known, e.what());
        throw;
      } catch (const TowerDepthExceeded& e) {
        if (r.known) throw detail::ClassWithoutWitness(*r.known, e.what());
        throw;
      }
      if (cls->kind == AffineClass::Discrete && cls->k == 9) {
        // the radical in the listed parameter is matched up to the tower's own generator
        TowerElem A = r.F.b[7];
        if (A * A != TowerElem(0, 4)) throw std::logic_error("reduction to Discrete(9) ended at " + r.F.str());
        TowerElem listed = representative(9).b[7];
        bool opposite = false;
        try {
          opposite = A == -listed;
        } catch (const IncompatibleTowers&) {
        }
        if (opposite) {
          r.src(-detail::vx(), detail::vy(), -detail::vz(), "flip the sign of the parameter");
          r.tgt(detail::vp(), -detail::vq(), "flip the sign of the parameter");
          A = -A;
        }
        r.expect(family8_form(A), cls->str());
      } else {
        r.expect(canonical_form(*cls), cls->str());
      }
      return std::make_pair(*cls, r);
    });
    out.cls = res.first;
    out.witness = res.second.chain;
    out.ctx = res.second.ctx;
  } catch (const CubicNotAllowed& e) {
    out.reason = e.what();
  } catch (const TowerDepthExceeded& e) {
    out.reason = e.what();
  } catch (const detail::ClassWithoutWitness& e) {
    out.cls = e.cls;
    out.reason = e.what();
  }
  return out;
}

}  // namespace

Reduction reduce_t1(const QuadMap& F, const Policy& policy) { return run_reduction(F, policy, TopType::T1, false); }
Reduction reduce_t2(const QuadMap& F, const Policy& policy) { return run_reduction(F, policy, TopType::T2, false); }
Reduction reduce_t4(const QuadMap& F, const Policy& policy) { return run_reduction(F, policy, TopType::T4, false); }
Reduction reduce_rest(const QuadMap& F, TopType type, const Policy& policy) {
  if (type == TopType::T1 || type == TopType::T2 || type == TopType::T4)
    throw TypeMismatch("reduce_rest does not handle " + type_name(type));
  return run_reduction(F, policy, type, false);
}

Reduction reduce(const QuadMap& F, const Policy& policy) { return run_reduction(F, policy, std::nullopt, true); }

}  // namespace qmap
