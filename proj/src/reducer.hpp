#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "qmap/reduce.hpp"

namespace qmap::detail {

inline Poly vx() { return Poly::var(X); }
inline Poly vy() { return Poly::var(Y); }
inline Poly vz() { return Poly::var(Z); }
inline Poly vp() { return Poly::var(P); }
inline Poly vq() { return Poly::var(Q); }

// The class is determined but its witness needs a refused extension.
struct ClassWithoutWitness : std::runtime_error {
  AffineClass cls;
  ClassWithoutWitness(AffineClass c, const std::string& why) : std::runtime_error(why), cls(std::move(c)) {}
};

// Current map plus the chain that produced it from the input.
struct Reducer {
  QuadMap F;
  WitnessChain chain;
  TowerCtx ctx;
  const SqrtHints* hints = nullptr;
  Policy policy;
  // set once the class is decided; later field refusals keep it
  std::optional<AffineClass> known;

  // coefficients in the fixed monomial order, 1-based: a(7) is the x coefficient of f
  TowerElem a(int i) const { return F.a[i - 1]; }
  TowerElem b(int i) const { return F.b[i - 1]; }

  void src(const SourceAut& s, const std::string& label);
  void tgt(const TargetAut& t, const std::string& label);
  void src(const Poly& x, const Poly& y, const Poly& z, const std::string& label);
  void tgt(const Poly& p, const Poly& q, const std::string& label);
  void append(const WitnessChain& c);
  void kill_constants();
  TowerElem root(const TowerElem& e);
  TowerElem cube_root(const TowerElem& e);
  // throws std::logic_error unless the current map equals G
  void expect(const QuadMap& G, const std::string& what) const;
};

AffineClass recipe_t1(Reducer& r);
AffineClass recipe_t2(Reducer& r);
AffineClass recipe_t3(Reducer& r);
AffineClass recipe_t4(Reducer& r);
AffineClass recipe_t5(Reducer& r);
AffineClass recipe_t6(Reducer& r);
AffineClass recipe_t7(Reducer& r);
AffineClass recipe_t8(Reducer& r);
AffineClass recipe_lower(Reducer& r, TopType t);

}  // namespace qmap::detail
