#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qmap/checks.hpp"
#include "qmap/expr.hpp"

using namespace qmap;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2, kCertificateOnly = 3;

struct Input {
  std::vector<std::string> exprs;
  std::string coeffs;
};

void add_input(CLI::App* cmd, Input& in) {
  cmd->add_option("-e,--expr", in.exprs, "the two components as expressions in x, y, z")->expected(2);
  cmd->add_option("-c,--coeffs", in.coeffs, "coefficient JSON {\"f\": [...10], \"g\": [...10]}, inline or a file path");
}

QuadMap read_input(const Input& in) {
  TowerCtx ctx;
  if (!in.exprs.empty() && !in.coeffs.empty()) throw CLI::ValidationError("give either -e or -c, not both");
  if (!in.exprs.empty()) return parse_map(in.exprs[0], in.exprs[1], ctx);
  if (in.coeffs.empty()) throw CLI::ValidationError("an input map is required (-e f g or -c json)");
  std::string text = in.coeffs;
  if (text.find('{') == std::string::npos) {
    std::ifstream f(text);
    if (!f) throw CLI::ValidationError("cannot read " + text);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  return map_from_json(json::parse(text), ctx);
}

Policy read_policy(const std::string& name) {
  Policy p;
  p.allow_cubic = name != "no-cubic";
  return p;
}

void print_human(const ClassReport& r) {
  std::cout << "input:   " << r.input.str() << "\n";
  std::cout << "class:   " << (r.cls ? r.cls->str() : "undetermined") << "\n";
  if (r.topo) std::cout << "topo:    " << r.topo->str() << "\n";
  if (r.witness) {
    std::cout << "witness: " << r.witness->steps.size() << " steps, " << (r.witness_ok ? "verified" : "NOT verified") << "\n";
  } else {
    std::cout << "witness: none (" << r.reason << ")\n";
  }
  if (r.census) std::cout << "census:  " << r.census->str() << "\n";
}

int emit_error(const std::string& kind, const std::string& msg, int code) {
  json j{{"error", kind}, {"message", msg}};
  std::cerr << j.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmapc: affine and topological classification of quadratic maps C^3 -> C^2"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string policy = "full";
  app.add_flag("--json", as_json, "machine-readable output")->configurable(false);
  app.add_option("--policy", policy, "field policy")->check(CLI::IsMember({"full", "no-cubic"}));

  Input in;
  auto* classify_cmd = app.add_subcommand("classify", "affine class, topological class, census and witness");
  auto* census_cmd = app.add_subcommand("census", "singularity census of the class of the input");
  auto* reduce_cmd = app.add_subcommand("reduce", "witness chain to the canonical form");
  for (auto* c : {classify_cmd, census_cmd, reduce_cmd}) {
    add_input(c, in);
    c->add_flag("--json", as_json, "machine-readable output");
    c->add_option("--policy", policy, "field policy")->check(CLI::IsMember({"full", "no-cubic"}));
  }

  auto* verify_cmd = app.add_subcommand("verify-paper", "run the classification checks");
  std::vector<std::string> only;
  verify_cmd->add_option("--only", only, "suites to run")->check(CLI::IsMember(suite_names()))->delimiter(',');
  verify_cmd->add_flag("--json", as_json, "machine-readable output");

  auto* fuzz_cmd = app.add_subcommand("fuzz", "reclassify random affine conjugates");
  unsigned seed = 1;
  int count = 100, klass = 0;
  fuzz_cmd->add_option("--seed", seed, "random seed");
  fuzz_cmd->add_option("--count", count, "number of trials");
  fuzz_cmd->add_option("--class", klass, "start from representative k (1..64); default draws at random")->check(CLI::Range(1, 64));
  fuzz_cmd->add_flag("--json", as_json, "machine-readable output");
  fuzz_cmd->add_option("--policy", policy, "field policy")->check(CLI::IsMember({"full", "no-cubic"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("usage", e.what(), kUsage);
  }

  try {
    if (classify_cmd->parsed() || census_cmd->parsed() || reduce_cmd->parsed()) {
      QuadMap F = read_input(in);
      Policy pol = read_policy(policy);
      if (reduce_cmd->parsed()) {
        Reduction r = reduce(F, pol);
        if (as_json) {
          json j{{"schema", "report.v1"},
                 {"input", {{"f", F.f().str()}, {"g", F.g().str()}}},
                 {"affine_class", r.cls ? class_json(*r.cls) : json(nullptr)},
                 {"witness", r.witness ? witness_json(*r.witness) : json(nullptr)},
                 {"reason", r.reason},
                 {"field_policy", policy_name(pol)}};
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "class: " << (r.cls ? r.cls->str() : "undetermined") << "\n";
          if (r.witness)
            for (auto& s : r.witness->steps) {
              std::cout << (s.kind == WitnessStep::Source ? "  source " : "  target ");
              if (s.kind == WitnessStep::Source) {
                auto p = s.src.polys();
                std::cout << "(" << p[0].str() << ", " << p[1].str() << ", " << p[2].str() << ")";
              } else {
                auto p = s.tgt.polys();
                std::cout << "(" << p[0].str() << ", " << p[1].str() << ")";
              }
              std::cout << "  " << s.label << "\n";
            }
          else
            std::cout << "no witness: " << r.reason << "\n";
        }
        return r.witness ? kOk : kCertificateOnly;
      }
      ClassReport r = classify(F, pol);
      if (census_cmd->parsed()) {
        if (!r.census) return emit_error("census", r.reason, kFail);
        if (as_json) std::cout << json{{"schema", "report.v1"}, {"affine_class", class_json(*r.cls)}, {"census", census_json(*r.census)}}.dump(2) << "\n";
        else std::cout << r.cls->str() << ": " << r.census->str() << "\n";
        return r.certificate_only() ? kCertificateOnly : kOk;
      }
      if (as_json) std::cout << report_json(r).dump(2) << "\n";
      else print_human(r);
      if (r.certificate_only()) return kCertificateOnly;
      return r.witness_ok ? kOk : kFail;
    }

    if (verify_cmd->parsed()) {
      if (only.empty()) only = suite_names();
      json out = json::array();
      bool ok = true;
      for (auto& s : only) {
        auto checks = run_suite(s);
        ok = ok && all_pass(checks);
        for (auto& c : checks) {
          if (as_json) {
            out.push_back({{"suite", c.suite}, {"name", c.name}, {"ok", c.ok}, {"informational", c.informational}, {"detail", c.detail}});
          } else {
            std::cout << (c.ok ? "pass " : "FAIL ") << (c.informational ? "[corrected] " : "") << c.suite << ": " << c.name
                      << (c.detail.empty() ? "" : "  -- " + c.detail) << "\n";
          }
        }
      }
      if (as_json) std::cout << json{{"schema", "report.v1"}, {"checks", out}, {"ok", ok}}.dump(2) << "\n";
      return ok ? kOk : kFail;
    }

    if (fuzz_cmd->parsed()) {
      if (count < 1) return emit_error("usage", "--count must be at least 1", kUsage);
      Policy pol = read_policy(policy);
      FuzzSummary s = klass ? fuzz_class(representative_class(klass), seed, count, pol) : fuzz_random(seed, count, pol);
      if (as_json) {
        json fails = json::array();
        for (auto& f : s.failures) fails.push_back({{"start", f.start}, {"trial_seed", f.trial_seed}, {"detail", f.detail}});
        std::cout << json{{"schema", "report.v1"}, {"trials", s.trials}, {"stable", s.stable}, {"failures", fails}}.dump(2) << "\n";
      } else {
        std::cout << s.stable << "/" << s.trials << " stable\n";
        for (auto& f : s.failures) std::cout << "  " << f.start << " trial seed " << f.trial_seed << ": " << f.detail << "\n";
      }
      return s.failures.empty() ? kOk : kFail;
    }
  } catch (const ParseError& e) {
    return emit_error("parse", e.what(), kUsage);
  } catch (const CLI::ValidationError& e) {
    return emit_error("usage", e.what(), kUsage);
  } catch (const json::exception& e) {
    return emit_error("parse", e.what(), kUsage);
  } catch (const std::invalid_argument& e) {
    return emit_error("parse", e.what(), kUsage);
  } catch (const std::exception& e) {
    return emit_error("internal", e.what(), kFail);
  }
  return kOk;
}
