#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "properties.hpp"
#include "qmap/checks.hpp"
#include "qmap/pencil.hpp"

using namespace qmap;

namespace {

struct Verdict {
  bool ok = false;
  std::string detail;
};

int failed = 0;

void criterion(int n, const std::string& title, double limit_s, const std::function<Verdict()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = dt <= limit_s;
  bool ok = v.ok && in_time;
  failed += !ok;
  std::printf("criterion %d %s: %s  [%.1fs, limit %.0fs] %s%s\n", n, title.c_str(), ok ? "PASS" : "FAIL", dt, limit_s,
              v.detail.c_str(), in_time ? "" : " (over time limit)");
  std::fflush(stdout);
}

Verdict suite(const std::string& name) {
  auto checks = run_suite(name);
  int bad = 0, total = 0;
  std::string first;
  for (auto& c : checks) {
    if (c.informational) continue;
    ++total;
    if (!c.ok && bad++ == 0) first = c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
  }
  std::string detail = std::to_string(total - bad) + "/" + std::to_string(total) + " checks";
  if (bad) detail += "; first failure: " + first;
  return {bad == 0, detail};
}

// linear target maps that keep both components homogeneous: diagonal or swap when the degrees differ
TargetAut graded_target(rnd::Rng& rng, const QuadMap& F) {
  Poly f = F.f(), g = F.g();
  if (f.is_zero() || g.is_zero() || f.total_degree() == g.total_degree()) return rng.linear_target(3, true);
  TargetAut t = TargetAut::identity();
  TowerElem a, b;
  do a = rng.gaussian(3, true); while (a.is_zero());
  do b = rng.gaussian(3, true); while (b.is_zero());
  bool swap = rng.small(0, 1);
  t.N = {{{swap ? TowerElem(0) : a, swap ? a : TowerElem(0)}, {swap ? b : TowerElem(0), swap ? TowerElem(0) : b}}};
  return t;
}

Verdict top_types() {
  rnd::Rng rng(2024);
  int cases = 0, bad = 0, witnesses = 0;
  std::string first;
  for (int k = 1; k <= 21; ++k) {
    TopType t = static_cast<TopType>(k);
    for (int trial = 0; trial <= 50; ++trial) {
      QuadMap F = top_normal_form(t);
      if (trial) F = conjugate(F, rng.linear_source(3, true), graded_target(rng, F));
      ++cases;
      auto c = classify_top(F);
      bool ok = c.type == t && top_type(F) == t;
      if (ok && c.witness) {
        ++witnesses;
        ok = verify_witness(F, top_normal_form(t), *c.witness).ok;
      }
      if (!ok && bad++ == 0) first = type_name(t) + " on " + F.str();
    }
  }
  std::string detail = std::to_string(cases - bad) + "/" + std::to_string(cases) + " cases, " + std::to_string(witnesses) +
                       " witnesses verified";
  if (bad) detail += "; first failure: " + first;
  return {bad == 0 && cases >= 1050, detail};
}

Verdict fuzz_stability() {
  std::vector<AffineClass> starts;
  for (int k = 1; k <= 64; ++k)
    if (representative_class(k).kind == AffineClass::Discrete) starts.push_back(representative_class(k));
  using AC = AffineClass;
  starts.push_back(AC::family(AC::Family1, {1, 1}));
  starts.push_back(AC::family(AC::Family1, {2, 1}));
  starts.push_back(AC::family(AC::Family1, {1, -2}));
  starts.push_back(AC::family(AC::Family8, {0}));
  starts.push_back(AC::family(AC::Family8, {1}));
  starts.push_back(AC::family(AC::Family8, {TowerElem(1, 1)}));
  int trials = 0, stable = 0;
  std::string first;
  unsigned seed = 100;
  for (auto& s : starts) {
    FuzzSummary f = fuzz_class(s, seed++, 100);
    trials += f.trials;
    stable += f.stable;
    if (!f.failures.empty() && first.empty())
      first = f.failures[0].start + " trial seed " + std::to_string(f.failures[0].trial_seed) + ": " + f.failures[0].detail;
  }
  std::string detail = std::to_string(stable) + "/" + std::to_string(trials) + " stable over " + std::to_string(starts.size()) +
                       " starting classes";
  if (!first.empty()) detail += "; first failure: " + first;
  return {stable == trials, detail};
}

Verdict properties() {
  struct Named {
    const char* name;
    props::Outcome o;
  };
  std::vector<Named> all = {{"field axioms", props::field_axioms(1000)},
                            {"resultant-gcd", props::resultant_gcd(1000)},
                            {"substitution homomorphism", props::substitution_homomorphism(1000)},
                            {"minor covariance", props::minor_covariance(1000)},
                            {"census evenness", props::census_evenness(1000)},
                            {"parser round trip", props::parser_round_trip(1000)}};
  bool ok = true;
  std::string detail;
  for (auto& n : all) {
    ok = ok && n.o.ok() && n.o.cases >= 1000;
    detail += std::string(detail.empty() ? "" : ", ") + n.name + " " + std::to_string(n.o.cases - n.o.failures) + "/" +
              std::to_string(n.o.cases);
    if (!n.o.ok()) detail += " (" + n.o.first_failure + ")";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  criterion(1, "resultant identities", 60, [] { return suite("resultants"); });
  criterion(2, "representative idempotence", 120, [] { return suite("idempotence"); });
  criterion(3, "census matrix", 600, [] { return suite("census"); });
  criterion(4, "exceptional locus", 600, [] { return suite("exceptional"); });
  criterion(5, "parametric identities", 600, [] { return suite("identities"); });
  criterion(6, "top-type classifier", 600, top_types);
  criterion(7, "fuzz stability", 1200, fuzz_stability);
  criterion(8, "topological merge witnesses", 600, [] { return suite("merges"); });
  criterion(9, "property suites", 600, properties);
  std::printf("%d of 9 criteria failed\n", failed);
  return failed ? 1 : 0;
}
