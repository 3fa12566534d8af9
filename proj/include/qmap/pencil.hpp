#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmap/linalg.hpp"
#include "qmap/maps.hpp"

namespace qmap {

struct NotHomogeneous : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegreeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Field policy: whether one cubic bottom level may be adjoined, and the tower depth bound.
struct Policy {
  bool allow_cubic = true;
  int max_depth = 6;
};

// Linear types of homogeneous pairs, T1..T21.
enum class TopType { T1 = 1, T2, T3, T4, T5, T6, T7, T8, T9, T10, T11, T12, T13, T14, T15, T16, T17, T18, T19, T20, T21 };
int type_index(TopType t);
std::string type_name(TopType t);
QuadMap top_normal_form(TopType t);

struct PencilProfile {
  Poly det_cubic;                                // in lambda, mu; zero when the pencil is degenerate
  std::vector<std::pair<int, int>> root_profile;  // (multiplicity, number of distinct roots)
  std::vector<std::pair<int, int>> ranks_at_roots;  // (multiplicity, member rank) for roots lying in the coefficient field
  std::string degenerate_data;
  std::string str() const;
};

struct TopClassification {
  TopType type = TopType::T21;
  std::optional<WitnessChain> witness;  // maps the input to top_normal_form(type)
  PencilProfile profile;
  TowerCtx ctx;
  std::string note;  // why the witness is absent
};

// det(lambda M_f + mu M_g)
Poly pencil_cubic(const QuadMap& Ft);

TopClassification classify_top(const QuadMap& Ft, const Policy& policy = {}, const TowerCtx& ctx = TowerCtx());
// Same, inside an enclosing zero-divisor replay: ZeroDivisorWitnessed propagates.
TopClassification classify_top(const QuadMap& Ft, const Policy& policy, const TowerCtx& ctx, const SqrtHints* hints);
// Type only; never extends the field.
TopType top_type(const QuadMap& Ft);

// Rational pre-normal form for the line-and-point type: the input is sent to
// (Q(x, y), c z^2) with Q a nondegenerate binary form, using no radicals.
WitnessChain t3_prenormal(const QuadMap& Ft);

}  // namespace qmap
