#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qmap/poly.hpp"

namespace qmap {

// Monomial order of the coefficient vectors: x^2, xy, xz, y^2, yz, z^2, x, y, z, 1.
extern const std::array<Exp, 10> kQuadBasis;
const char* quad_monomial_name(int k);

struct QuadMap {
  std::array<TowerElem, 10> a{}, b{};

  QuadMap() = default;
  QuadMap(const Poly& f, const Poly& g);  // throws std::invalid_argument past degree 2 or outside x,y,z
  static Poly to_poly(const std::array<TowerElem, 10>& c);
  static std::array<TowerElem, 10> coeffs(const Poly& f);

  Poly f() const { return to_poly(a); }
  Poly g() const { return to_poly(b); }
  int deg_f() const;
  int deg_g() const;
  bool is_homogeneous() const;
  std::string str() const;
  friend bool operator==(const QuadMap& l, const QuadMap& r) { return l.a == r.a && l.b == r.b; }
  friend bool operator!=(const QuadMap& l, const QuadMap& r) { return !(l == r); }
};

// x -> M x + t
struct SourceAut {
  std::array<std::array<TowerElem, 3>, 3> M{};
  std::array<TowerElem, 3> t{};

  static SourceAut identity();
  // images of x, y, z as affine polynomials; throws std::invalid_argument when singular or not affine
  static SourceAut from_polys(const Poly& x, const Poly& y, const Poly& z);
  std::array<Poly, 3> polys() const;
  TowerElem det() const;
  SourceAut inverse() const;
  bool is_linear() const { return t[0].is_zero() && t[1].is_zero() && t[2].is_zero(); }
  friend bool operator==(const SourceAut& l, const SourceAut& r) { return l.M == r.M && l.t == r.t; }
};
// (this o other)(x) = this(other(x))
SourceAut compose(const SourceAut& outer, const SourceAut& inner);

// (p, q) -> N (p, q) + u
struct TargetAut {
  std::array<std::array<TowerElem, 2>, 2> N{};
  std::array<TowerElem, 2> u{};

  static TargetAut identity();
  static TargetAut from_polys(const Poly& p, const Poly& q);
  std::array<Poly, 2> polys() const;
  TowerElem det() const;
  TargetAut inverse() const;
  bool is_linear() const { return u[0].is_zero() && u[1].is_zero(); }
  friend bool operator==(const TargetAut& l, const TargetAut& r) { return l.N == r.N && l.u == r.u; }
};
TargetAut compose(const TargetAut& outer, const TargetAut& inner);

// Psi o F o Phi
QuadMap conjugate(const QuadMap& F, const SourceAut& phi, const TargetAut& psi);
QuadMap compose_source(const QuadMap& F, const SourceAut& phi);
QuadMap compose_target(const TargetAut& psi, const QuadMap& F);

struct Minors {
  Poly xy, xz, yz;
};
Minors minors(const QuadMap& F);
QuadMap top_part(const QuadMap& F);

// One recorded step.  Applying a chain to a map F means replacing F by F o phi
// (source step) or psi o F (target step), in order.
struct WitnessStep {
  enum Kind { Source, Target } kind = Source;
  SourceAut src = SourceAut::identity();
  TargetAut tgt = TargetAut::identity();
  std::string label;
};

struct WitnessChain {
  std::vector<WitnessStep> steps;

  void source(const SourceAut& s, std::string label);
  void target(const TargetAut& t, std::string label);
  void append(const WitnessChain& other);
  QuadMap apply(const QuadMap& F) const;
  // (Phi, Psi) with input = Psi o canonical o Phi
  std::pair<SourceAut, TargetAut> to_canonical_inverse() const;
  // (Phi, Psi) with canonical = Psi o input o Phi
  std::pair<SourceAut, TargetAut> composite() const;
  size_t size() const { return steps.size(); }
};

struct WitnessCheck {
  bool ok = false;
  std::vector<std::string> diff;  // mismatched coefficients, "f[x^2]: got ... expected ..."
  explicit operator bool() const { return ok; }
};
// Checks Psi o G o Phi == F for the inverse composites of the chain (which maps F to G).
WitnessCheck verify_witness(const QuadMap& F, const QuadMap& G, const WitnessChain& chain);

// Polynomial (possibly non-affine) maps used by topological merge witnesses.
struct PolyWitness {
  enum Role { Affine, PolynomialHomeomorphism } role = Affine;
  enum Kind { Source, Target } kind = Source;
  std::array<Poly, 3> source_map;  // images of x, y, z
  std::array<Poly, 2> target_map;  // polynomials in p, q
  std::string label;
};
std::pair<Poly, Poly> apply_poly_witness(const std::pair<Poly, Poly>& F, const PolyWitness& w);

}  // namespace qmap
