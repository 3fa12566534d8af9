#include "qmap/report.hpp"

#include <chrono>

namespace qmap {

using nlohmann::json;

std::string policy_name(const Policy& p) { return p.allow_cubic ? "full" : "no-cubic"; }

json literal_json(const TowerElem& e) {
  if (e.is_base()) return {{"re", e.re().get_str()}, {"im", e.im().get_str()}};
  const Level& l = *e.level();
  auto c = e.coords();
  if (l.kind == Level::Quadratic) return {{"a", literal_json(c[0])}, {"b", literal_json(c[1])}, {"radicand", literal_json(l.radicand)}};
  json coords = json::array(), min = json::array();
  for (auto& x : c) coords.push_back(literal_json(x));
  for (auto& x : l.min) min.push_back(literal_json(x));
  return {{"coords", coords}, {"min", min}};
}

TowerElem literal_from_json(const json& j, TowerCtx& ctx) {
  if (j.is_string()) return parse_literal(j.get<std::string>(), ctx);
  if (j.is_number_integer()) return TowerElem(j.get<long>());
  if (!j.is_object()) throw ParseError("field literal must be a string or an object", 0);
  if (j.contains("re")) {
    Rational re(j.at("re").get<std::string>()), im(j.value("im", std::string("0")));
    re.canonicalize();
    im.canonicalize();
    return TowerElem(re, im);
  }
  if (j.contains("radicand")) {
    TowerElem a = literal_from_json(j.at("a"), ctx), b = literal_from_json(j.at("b"), ctx);
    Extended s = sqrt(literal_from_json(j.at("radicand"), ctx), ctx);
    ctx = s.ctx;
    return a + b * s.value;
  }
  throw ParseError("cubic literal trees are output only", 0);
}

QuadMap map_from_json(const json& j, TowerCtx& ctx) {
  QuadMap F;
  for (const char* key : {"f", "g"}) {
    const json& a = j.at(key);
    if (!a.is_array() || a.size() != 10) throw ParseError(std::string("\"") + key + "\" must hold 10 coefficients", 0);
    for (size_t i = 0; i < 10; ++i) (key[0] == 'f' ? F.a : F.b)[i] = literal_from_json(a[i], ctx);
  }
  return F;
}

json class_json(const AffineClass& c) {
  json p = json::array();
  for (auto& x : c.params) p.push_back(literal_json(x));
  return {{"kind", c.kind_name()}, {"k", c.k}, {"params", p}, {"text", c.str()}};
}

json census_json(const Census& c) {
  json comps = json::array();
  for (auto& x : c.components) {
    json eqs = json::array();
    for (auto& e : x.equations) eqs.push_back(e.str());
    comps.push_back({{"kind", kind_name(x.kind)},
                     {"equations", eqs},
                     {"restriction", restriction_name(x.restriction)},
                     {"restriction_critical_points", x.restriction_critical}});
  }
  return {{"applicable", c.applicable},
          {"cusps", c.cusps},
          {"double_cusps", c.double_cusps},
          {"nodes", c.nodes},
          {"image_intersections", c.intersections},
          {"cusp_poly", c.cusp_poly.str()},
          {"node_poly", c.node_poly.str()},
          {"components", comps},
          {"note", c.note}};
}

json witness_json(const WitnessChain& w) {
  json steps = json::array();
  for (auto& s : w.steps) {
    json m = json::array(), t = json::array();
    if (s.kind == WitnessStep::Source) {
      for (auto& row : s.src.M) {
        json r = json::array();
        for (auto& x : row) r.push_back(literal_json(x));
        m.push_back(r);
      }
      for (auto& x : s.src.t) t.push_back(literal_json(x));
    } else {
      for (auto& row : s.tgt.N) {
        json r = json::array();
        for (auto& x : row) r.push_back(literal_json(x));
        m.push_back(r);
      }
      for (auto& x : s.tgt.u) t.push_back(literal_json(x));
    }
    steps.push_back({{"kind", s.kind == WitnessStep::Source ? "source" : "target"},
                     {"label", s.label},
                     {"matrix", m},
                     {"translation", t}});
  }
  return {{"steps", steps}};
}

namespace {

bool census_consistent(const Census& c) {
  for (const char* bad : {"odd", "differs", "degenerate"})
    if (c.note.find(bad) != std::string::npos) return false;
  return true;
}

}  // namespace

ClassReport classify(const QuadMap& F, const Policy& policy) {
  auto t0 = std::chrono::steady_clock::now();
  ClassReport r;
  r.input = F;
  r.policy = policy;
  Reduction red = reduce(F, policy);
  r.cls = red.cls;
  r.witness = red.witness;
  r.reason = red.reason;
  if (r.cls) {
    QuadMap G = canonical_form(*r.cls);
    if (r.witness) r.witness_ok = verify_witness(F, G, *r.witness).ok;
    r.topo = topo_index(*r.cls);
    try {
      r.census = census_of(*r.cls);
      r.census_ok = census_consistent(*r.census);
      if (r.cls->kind == AffineClass::Discrete) {
        r.structure_ok = verify_critical_structure(r.cls->k).ok;
      } else {
        r.structure_ok = true;
        for (auto& c : r.census->components)
          if (c.param && !c.param->annihilates(G)) r.structure_ok = false;
      }
    } catch (const std::exception& e) {
      r.reason += (r.reason.empty() ? "" : "; ") + std::string("census: ") + e.what();
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

json report_json(const ClassReport& r) {
  json j;
  j["schema"] = "report.v1";
  j["input"] = {{"f", r.input.f().str()}, {"g", r.input.g().str()}};
  j["affine_class"] = r.cls ? class_json(*r.cls) : json(nullptr);
  j["topo_class"] = r.topo ? json{{"index", r.topo->index}, {"letter", r.topo->letter ? std::string(1, r.topo->letter) : ""}}
                           : json(nullptr);
  j["witness"] = r.witness ? witness_json(*r.witness) : json(nullptr);
  j["census"] = r.census ? census_json(*r.census) : json(nullptr);
  j["verification"] = {{"witness_ok", r.witness_ok}, {"census_ok", r.census_ok}, {"structure_ok", r.structure_ok}};
  j["certificate_only"] = r.certificate_only();
  j["reason"] = r.reason;
  j["field_policy"] = policy_name(r.policy);
  j["timing"] = {{"seconds", r.seconds}};
  return j;
}

}  // namespace qmap
