#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "qmap/topo.hpp"

namespace qmap {

struct ClassReport {
  QuadMap input;
  Policy policy;
  std::optional<AffineClass> cls;
  std::optional<TopoIndex> topo;
  std::optional<WitnessChain> witness;  // input -> canonical_form(*cls)
  std::optional<Census> census;
  bool witness_ok = false, census_ok = false, structure_ok = false;
  std::string reason;  // why the witness, class or census is missing
  double seconds = 0;

  bool certificate_only() const { return !witness.has_value(); }
};

// normalize, reduce, verify the witness, census of the class, topological index
ClassReport classify(const QuadMap& F, const Policy& policy = {});

nlohmann::json literal_json(const TowerElem& e);
// accepts a literal string or a literal tree
TowerElem literal_from_json(const nlohmann::json& j, TowerCtx& ctx);
// {"f": [10 literals], "g": [10 literals]} in the order x^2, xy, xz, y^2, yz, z^2, x, y, z, 1
QuadMap map_from_json(const nlohmann::json& j, TowerCtx& ctx);

nlohmann::json class_json(const AffineClass& c);
nlohmann::json census_json(const Census& c);
nlohmann::json witness_json(const WitnessChain& w);
nlohmann::json report_json(const ClassReport& r);
std::string policy_name(const Policy& p);

}  // namespace qmap
