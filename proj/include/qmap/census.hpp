#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmap/reduce.hpp"

namespace qmap {

struct ParamOutOfDomain : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct StructureMismatch : std::runtime_error {
  std::string claim;
  StructureMismatch(std::string c, const std::string& detail)
      : std::runtime_error(c + ": " + detail), claim(std::move(c)) {}
};

// t -> (X(t), Y(t), Z(t)) / D(t), polynomials in T
struct Parametrization {
  Poly X, Y, Z, D = Poly(1);
  // numerator of h(point) over D^deg for h of degree <= 2 in x, y, z
  Poly compose(const Poly& h) const;
  // all three minors vanish identically along the curve
  bool annihilates(const QuadMap& F) const;
  // roots of D, as a polynomial in T
  Poly exclusions() const { return D; }
};

struct Component {
  enum Kind { Line, DoubleLine, TripleLine, Hyperbola, Parabola, Cubic, Plane, DoublePlane, Cylinder, EmbeddedLine, EmbeddedPoint, Space };
  enum Restriction { Injective, TwoToOne, Constant, NotComputed };
  Kind kind = Line;
  std::vector<Poly> equations;          // generators of the reduced component (surfaces: one equation)
  std::optional<Parametrization> param;  // curves; for cylinders the section z = 0
  Restriction restriction = NotComputed;
  int restriction_critical = 0;  // distinct critical points of the restricted map (before removing meeting points)

  bool is_curve() const { return kind <= Cubic || kind == EmbeddedLine; }
  bool is_surface() const { return kind == Plane || kind == DoublePlane || kind == Cylinder; }
  std::string str() const;
};
std::string kind_name(Component::Kind k);
std::string restriction_name(Component::Restriction r);

struct Census {
  bool applicable = true;  // false when the critical set has no curve part carrying singularities
  int cusps = 0, double_cusps = 0, nodes = 0;
  int intersections = 0;  // points where images of distinct components meet
  Poly cusp_poly;         // in T; simple roots are cusps, double roots double cusps
  Poly node_poly;         // in T; roots pair up to nodes
  std::vector<Component> components;
  std::string note;

  // counts plus the multiset of (curve topology, restriction, critical points of the restriction)
  std::string signature() const;
  std::string str() const;
};

// Curve-based census of F with the given components.
Census census_from_components(const QuadMap& F, std::vector<Component> comps);

// Family1/Family2 normal form (x^2+Bz^2+2Ay, Ay^2+Bz^2+2x+2Bz)
Poly hc_poly(const TowerElem& A, const TowerElem& B);
Poly hn_poly(const TowerElem& A, const TowerElem& B);
// symbolic versions in A, B, T
Poly hc_symbolic();
Poly hn_symbolic();
Poly h0_symbolic();
Parametrization family1_curve();

Census census_family1(const TowerElem& A, const TowerElem& B);
Census census_family8(const TowerElem& A);
Census family4_structure(const TowerElem& A);
// representative F_k; families at their listed parameters
Census census_discrete(int k);
Census census_of(const AffineClass& c);

struct ResultantCheck {
  std::string name;
  Poly computed, printed;
  int sign = 0;  // +1 exact, -1 equal up to sign, 0 mismatch
};
std::vector<ResultantCheck> verify_resultant_identities();

struct StructureReport {
  int k = 0;
  bool ok = false;
  std::vector<std::string> checks;  // one line per verified claim
  std::vector<std::string> failures;
};
// throws StructureMismatch on the first failed claim when strict
StructureReport verify_critical_structure(int k, bool strict = false);
// stated components of F_k (reduced equations, parametrizations)
std::vector<Component> stated_components(int k);

}  // namespace qmap
