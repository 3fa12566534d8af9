#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmap/pencil.hpp"

namespace qmap {

struct TypeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Affine equivalence class.  Discrete classes carry the representative number
// k (3, 5, 6, 7, 9..64); families carry parameters:
//   Family1 / Family2: (A, B) of (x^2+Bz^2+2Ay, Ay^2+Bz^2+2x+2Bz)
//   Family4: A of (x^2+z^2+2Ay, Ay^2+z^2+2x)
//   Family8: A of (x^2+z^2+2y, yz+x+Ay)
struct AffineClass {
  enum Kind { Discrete, Family1, Family2, Family4, Family8 };
  Kind kind = Discrete;
  int k = 64;
  std::vector<TowerElem> params;

  static AffineClass discrete(int k);
  static AffineClass family(Kind kind, std::vector<TowerElem> params);
  std::string kind_name() const;
  std::string str() const;
  friend bool operator==(const AffineClass& l, const AffineClass& r) {
    return l.kind == r.kind && l.k == r.k && l.params == r.params;
  }
};

// The canonical form of a class: the listed representative for discrete
// classes, the parametrized normal form for families.
QuadMap canonical_form(const AffineClass& c);
// Listed representative F_k, k = 1..64 (families at their listed parameters).
QuadMap representative(int k);
// Class the listed representative F_k belongs to.
AffineClass representative_class(int k);
// Top type of every class with representative number k.
TopType class_top_type(int k);

// H_0(A, B)
TowerElem h0(const TowerElem& A, const TowerElem& B);
bool is_exceptional_pair(const TowerElem& A, const TowerElem& B);
// Parameter values reachable from (A, B) by reordering the degenerate pencil members.
std::vector<std::pair<TowerElem, TowerElem>> family1_orbit(const TowerElem& A, const TowerElem& B);
// Family4 parameters representing the same class as A.
std::vector<TowerElem> family4_orbit(const TowerElem& A);
bool same_class(const AffineClass& a, const AffineClass& b);

struct Reduction {
  std::optional<AffineClass> cls;  // absent when the class needs a refused extension
  TopType top = TopType::T21;
  std::optional<WitnessChain> witness;  // maps the input to canonical_form(*cls)
  TowerCtx ctx;
  std::string reason;  // why the witness (or class) is missing
  bool certificate_only() const { return !witness.has_value(); }
};

// Target swap/shear (and constant removal) so that either both top parts are
// independent quadratic forms or deg g < deg f.
std::pair<QuadMap, WitnessChain> normalize_pair(const QuadMap& F);

// Per-type reductions.  The input must be normalized with the stated top type.
Reduction reduce_t1(const QuadMap& F, const Policy& policy = {});
Reduction reduce_t2(const QuadMap& F, const Policy& policy = {});
Reduction reduce_t4(const QuadMap& F, const Policy& policy = {});
Reduction reduce_rest(const QuadMap& F, TopType type, const Policy& policy = {});

// normalize_pair, top type, per-type reduction; the witness covers every step.
Reduction reduce(const QuadMap& F, const Policy& policy = {});

}  // namespace qmap
