#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmap {

using Rational = mpq_class;
using Integer = mpz_class;

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivisionByZero : FieldError {
  DivisionByZero() : FieldError("division by zero") {}
};
struct IncompatibleTowers : FieldError {
  IncompatibleTowers() : FieldError("elements live in incompatible towers") {}
};
struct TowerDepthExceeded : FieldError {
  explicit TowerDepthExceeded(int bound)
      : FieldError("tower depth bound " + std::to_string(bound) + " exceeded") {}
};
struct CubicNotAllowed : FieldError {
  explicit CubicNotAllowed(const std::string& why) : FieldError("cubic extension refused: " + why) {}
};
struct InconsistentTower : FieldError {
  InconsistentTower() : FieldError("zero divisor witnessed twice; tower cannot be repaired") {}
};

struct Level;
using LevelPtr = std::shared_ptr<const Level>;

// Element of Q(i)(s_1)...(s_k).  Stored at the lowest level whose generator it
// actually uses; coordinates above that level are implicit zeros.
class TowerElem {
 public:
  TowerElem() = default;
  TowerElem(long v) : re_(v) {}  // NOLINT: implicit by design, literals read naturally
  TowerElem(const Rational& re, const Rational& im = 0) : re_(re), im_(im) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static TowerElem i() { return TowerElem(0, 1); }
  static TowerElem generator(const LevelPtr& lvl);
  static TowerElem from_coords(const LevelPtr& lvl, std::vector<TowerElem> coords);

  const LevelPtr& level() const { return lvl_; }
  int depth() const;
  bool is_base() const { return !lvl_; }
  bool is_zero() const { return !lvl_ && sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return !lvl_ && re_ == 1 && sgn(im_) == 0; }
  bool is_rational() const { return !lvl_ && sgn(im_) == 0; }
  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  // coordinates over the level below; empty for base elements
  const std::vector<TowerElem>& coords() const { return c_; }
  std::vector<TowerElem> coords_at(const LevelPtr& lvl) const;

  TowerElem operator-() const;
  TowerElem inv() const;
  TowerElem conj_base() const;  // complex conjugate, base elements only
  TowerElem pow(unsigned n) const;

  friend TowerElem operator+(const TowerElem& a, const TowerElem& b);
  friend TowerElem operator-(const TowerElem& a, const TowerElem& b);
  friend TowerElem operator*(const TowerElem& a, const TowerElem& b);
  friend TowerElem operator/(const TowerElem& a, const TowerElem& b);
  TowerElem& operator+=(const TowerElem& o) { return *this = *this + o; }
  TowerElem& operator-=(const TowerElem& o) { return *this = *this - o; }
  TowerElem& operator*=(const TowerElem& o) { return *this = *this * o; }
  TowerElem& operator/=(const TowerElem& o) { return *this = *this / o; }
  friend bool operator==(const TowerElem& a, const TowerElem& b);
  friend bool operator!=(const TowerElem& a, const TowerElem& b) { return !(a == b); }

  // Structural total order used only for deterministic sorting.
  static int compare(const TowerElem& a, const TowerElem& b);

  std::string str() const;

 private:
  LevelPtr lvl_;
  Rational re_, im_;
  std::vector<TowerElem> c_;
  static TowerElem make(const LevelPtr& lvl, std::vector<TowerElem> c);
  friend struct TowerOps;
};

struct Level {
  enum Kind { Quadratic, Cubic };
  Kind kind;
  LevelPtr parent;
  int depth;
  TowerElem radicand;         // Quadratic: s^2 = radicand
  std::vector<TowerElem> min; // Cubic: s^3 + min[2] s^2 + min[1] s + min[0] = 0
  int degree() const { return kind == Quadratic ? 2 : 3; }
  std::string name() const { return "s" + std::to_string(depth); }
};

LevelPtr join_levels(const LevelPtr& a, const LevelPtr& b);
bool is_ancestor(const LevelPtr& anc, const LevelPtr& lvl);

class TowerCtx {
 public:
  TowerCtx() = default;
  explicit TowerCtx(int max_depth) : max_depth_(max_depth) {}
  TowerCtx(LevelPtr top, int max_depth) : top_(std::move(top)), max_depth_(max_depth) {}

  const LevelPtr& top() const { return top_; }
  int depth() const { return top_ ? top_->depth : 0; }
  int max_depth() const { return max_depth_; }
  std::vector<LevelPtr> levels() const;  // bottom-up
  bool has_cubic() const;
  bool contains(const TowerElem& e) const { return is_ancestor(e.level(), top_); }
  // ctx extended to cover e (e must live in a tower comparable with this one)
  TowerCtx absorb(const TowerElem& e) const;

  TowerCtx adjoin_sqrt(const TowerElem& radicand) const;
  TowerCtx adjoin_cubic(const std::vector<TowerElem>& min) const;

 private:
  LevelPtr top_;
  int max_depth_ = 6;
};

// Roots witnessed by zero divisors; consulted before a level is adjoined.
struct SqrtHints {
  std::vector<std::pair<TowerElem, TowerElem>> known;  // (radicand, root)
  std::optional<TowerElem> lookup(const TowerElem& radicand) const;
};

struct ZeroDivisorWitnessed : FieldError {
  TowerElem radicand, root;
  ZeroDivisorWitnessed(TowerElem r, TowerElem s)
      : FieldError("zero divisor witnessed"), radicand(std::move(r)), root(std::move(s)) {}
};

struct Extended {
  TowerElem value;
  TowerCtx ctx;
};

// Square root within ctx when one exists there (complete for towers of
// quadratic levels; a norm test plus descent at the cubic level).
std::optional<TowerElem> find_sqrt(const TowerElem& e, const TowerCtx& ctx);
// Square root, adjoining a level when necessary.
Extended sqrt(const TowerElem& e, const TowerCtx& ctx, const SqrtHints* hints = nullptr);
// Cube root: exact in Q(i) when it exists, else a cubic bottom level.
std::optional<TowerElem> gaussian_cbrt(const TowerElem& e);
Extended cbrt(const TowerElem& e, const TowerCtx& ctx, bool allow_cubic);

// Gaussian-rational roots of a polynomial with base coefficients (low to high).
std::vector<TowerElem> gaussian_roots(const std::vector<TowerElem>& coeffs);
std::optional<TowerElem> gaussian_sqrt(const TowerElem& e);

// Runs fn(hints) and replays it whenever a zero divisor reveals that an
// adjoined radicand was a square after all.
template <class Fn>
auto with_d5(Fn&& fn) {
  SqrtHints hints;
  for (;;) {
    try {
      return fn(hints);
    } catch (const ZeroDivisorWitnessed& z) {
      if (hints.lookup(z.radicand)) throw InconsistentTower();
      hints.known.emplace_back(z.radicand, z.root);
    }
  }
}

// q = cofactor^2 * result with result a squarefree integer (up to the trial
// division bound).
Rational squarefree_part(const Rational& q, Rational* cofactor);

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& msg, size_t p)
      : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

// Constant literals: 3/2, i, 1/2+3i, sqrt(2)*(1+i).  Levels created by sqrt are
// added to ctx so repeated radicals share one level.
TowerElem parse_literal(const std::string& text, TowerCtx& ctx);
// Re-parsable text; quadratic generators print as sqrt(radicand).
std::string to_literal(const TowerElem& e);

}  // namespace qmap
