#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmap/field.hpp"

namespace qmap {

// s is an auxiliary second curve parameter used by elimination in census.
enum Var : uint8_t { X, Y, Z, P, Q, T, S, A, B, Alpha, Beta, Lambda, Mu, kNumVars };
using VarSet = uint16_t;
using Exp = std::array<uint8_t, kNumVars>;

constexpr VarSet bit(Var v) { return VarSet(1u << v); }
constexpr VarSet kXYZ = bit(X) | bit(Y) | bit(Z);
constexpr VarSet kPQ = bit(P) | bit(Q);

const char* var_name(Var v);
bool var_from_name(const std::string& name, Var& out);

struct RingMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotUnivariate : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegreeUnsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graded order: higher total degree first, then lexicographically larger first.
struct ExpOrder {
  bool operator()(const Exp& a, const Exp& b) const;
};

class Poly {
 public:
  using Terms = std::map<Exp, TowerElem, ExpOrder>;

  Poly() = default;
  Poly(const TowerElem& c);  // NOLINT
  Poly(long c) : Poly(TowerElem(c)) {}  // NOLINT
  static Poly var(Var v);
  static Poly monomial(const TowerElem& c, const Exp& e);

  VarSet ring() const { return ring_; }
  Poly with_ring(VarSet r) const;
  const Terms& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  TowerElem constant_term() const;
  TowerElem coeff(const Exp& e) const;
  const Exp& leading_exp() const { return terms_.begin()->first; }
  const TowerElem& leading_coeff() const { return terms_.begin()->second; }

  VarSet used() const;
  int degree(Var v) const;
  int total_degree() const;
  Poly homogeneous_part(int d) const;

  Poly derivative(Var v) const;
  std::vector<Poly> coeffs_in(Var v) const;  // index k holds the coefficient of v^k
  Poly eval(Var v, const TowerElem& c) const;
  Poly pow(unsigned n) const;
  Poly operator-() const;
  Poly scaled(const TowerElem& c) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string str() const;

 private:
  VarSet ring_ = 0;
  Terms terms_;
  void add_term(const Exp& e, const TowerElem& c);
};

// RingMismatch when an assigned variable is outside f's ring
Poly substitute(const Poly& f, const std::map<Var, Poly>& assignment);
// same composition without the ring check
Poly subst(const Poly& f, const std::map<Var, Poly>& assignment);
// quotient when b divides a exactly, nullopt otherwise
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
// Sylvester determinant: rows of f (deg g copies) above rows of g (deg f copies)
Poly resultant(const Poly& f, const Poly& g, Var v);
Poly gcd_univar(const Poly& f, const Poly& g, Var v);
// (multiplicity, degree of the product of distinct roots with that multiplicity)
std::vector<std::pair<int, int>> squarefree_profile(const Poly& f, Var v);

struct RootList {
  std::vector<std::pair<TowerElem, int>> roots;  // (root, multiplicity)
  TowerCtx ctx;
};
RootList roots_in_tower(const Poly& f, Var v, const TowerCtx& ctx);

// Dense univariate polynomial over the tower field, low degree first.
struct UPoly {
  std::vector<TowerElem> c;

  UPoly() = default;
  explicit UPoly(std::vector<TowerElem> coeffs) : c(std::move(coeffs)) { trim(); }
  static UPoly from(const Poly& f, Var v);
  Poly to_poly(Var v) const;

  int degree() const { return (int)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  const TowerElem& lead() const { return c.back(); }
  void trim();
  UPoly monic() const;
  UPoly derivative() const;
  TowerElem eval(const TowerElem& x) const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(const UPoly& a, const UPoly& b);  // monic; zero only when both are zero
// Yun decomposition: out[m-1] is the monic product of roots of multiplicity m
std::vector<UPoly> squarefree_decomposition(const UPoly& f);
UPoly squarefree_part(const UPoly& f);
size_t distinct_root_count(const UPoly& f);

}  // namespace qmap
