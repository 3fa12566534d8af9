#include "qmap/field.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace qmap {

namespace {

bool same_level(const LevelPtr& a, const LevelPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->depth != b->depth || a->kind != b->kind) return false;
  if (!same_level(a->parent, b->parent)) return false;
  if (a->kind == Level::Quadratic) return a->radicand == b->radicand;
  for (int k = 0; k < 3; ++k)
    if (a->min[k] != b->min[k]) return false;
  return true;
}

const LevelPtr& ancestor_at(const LevelPtr& lvl, int depth, LevelPtr& scratch) {
  scratch = lvl;
  while (scratch && scratch->depth > depth) scratch = scratch->parent;
  return scratch;
}

bool rational_sqrt(const Rational& q, Rational& out) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  out = Rational(n, d);
  out.canonicalize();
  return true;
}

}  // namespace

struct TowerOps {
  static TowerElem base(const Rational& re, const Rational& im) { return TowerElem(re, im); }

  static TowerElem add(const TowerElem& a, const TowerElem& b, int sign) {
    if (!a.lvl_ && !b.lvl_) {
      return sign > 0 ? TowerElem(a.re_ + b.re_, a.im_ + b.im_) : TowerElem(a.re_ - b.re_, a.im_ - b.im_);
    }
    LevelPtr L = join_levels(a.lvl_, b.lvl_);
    auto ca = a.coords_at(L);
    auto cb = b.coords_at(L);
    for (size_t k = 0; k < ca.size(); ++k) ca[k] = add(ca[k], cb[k], sign);
    return TowerElem::make(L, std::move(ca));
  }

  static TowerElem scale(const TowerElem& s, const TowerElem& e) {
    // s lives strictly below e's level
    std::vector<TowerElem> c = e.c_;
    for (auto& x : c) x = s * x;
    return TowerElem::make(e.lvl_, std::move(c));
  }

  static TowerElem mul(const TowerElem& a, const TowerElem& b) {
    if (!a.lvl_ && !b.lvl_) {
      return TowerElem(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    if (a.is_zero() || b.is_zero()) return TowerElem();
    LevelPtr L = join_levels(a.lvl_, b.lvl_);
    if (!same_level(a.lvl_, L)) return scale(a, b);
    if (!same_level(b.lvl_, L)) return scale(b, a);
    const auto& x = a.c_;
    const auto& y = b.c_;
    if (L->kind == Level::Quadratic) {
      std::vector<TowerElem> c{x[0] * y[0] + x[1] * y[1] * L->radicand, x[0] * y[1] + x[1] * y[0]};
      return TowerElem::make(L, std::move(c));
    }
    std::vector<TowerElem> p(5);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) p[i + j] += x[i] * y[j];
    for (int d = 4; d >= 3; --d) {
      if (p[d].is_zero()) continue;
      TowerElem t = p[d];
      p[d] = TowerElem();
      for (int k = 0; k < 3; ++k) p[d - 3 + k] -= t * L->min[k];
    }
    p.resize(3);
    return TowerElem::make(L, std::move(p));
  }

  static TowerElem inv(const TowerElem& a) {
    if (a.is_zero()) throw DivisionByZero();
    if (!a.lvl_) {
      Rational n = a.re_ * a.re_ + a.im_ * a.im_;
      return TowerElem(a.re_ / n, -a.im_ / n);
    }
    const LevelPtr& L = a.lvl_;
    if (L->kind == Level::Quadratic) {
      const TowerElem& a0 = a.c_[0];
      const TowerElem& a1 = a.c_[1];
      TowerElem norm = a0 * a0 - a1 * a1 * L->radicand;
      if (norm.is_zero()) throw ZeroDivisorWitnessed(L->radicand, a0 / a1);
      TowerElem ni = norm.inv();
      return TowerElem::make(L, {a0 * ni, -(a1 * ni)});
    }
    // cubic bottom level: solve the multiplication system over Q(i)
    std::vector<std::vector<TowerElem>> M(3, std::vector<TowerElem>(4));
    TowerElem col = a;
    TowerElem th = TowerElem::generator(L);
    for (int j = 0; j < 3; ++j) {
      auto cc = col.coords_at(L);
      for (int i = 0; i < 3; ++i) M[i][j] = cc[i];
      col = col * th;
    }
    M[0][3] = 1;
    for (int c = 0; c < 3; ++c) {
      int piv = -1;
      for (int r = c; r < 3; ++r)
        if (!M[r][c].is_zero()) { piv = r; break; }
      if (piv < 0) throw InconsistentTower();
      std::swap(M[c], M[piv]);
      TowerElem pinv = M[c][c].inv();
      for (int k = c; k < 4; ++k) M[c][k] *= pinv;
      for (int r = 0; r < 3; ++r) {
        if (r == c || M[r][c].is_zero()) continue;
        TowerElem f = M[r][c];
        for (int k = c; k < 4; ++k) M[r][k] -= f * M[c][k];
      }
    }
    return TowerElem::make(L, {M[0][3], M[1][3], M[2][3]});
  }
};

// ---- levels ----

LevelPtr join_levels(const LevelPtr& a, const LevelPtr& b) {
  if (!a) return b;
  if (!b) return a;
  LevelPtr s;
  if (a->depth >= b->depth) {
    if (same_level(ancestor_at(a, b->depth, s), b)) return a;
  } else {
    if (same_level(ancestor_at(b, a->depth, s), a)) return b;
  }
  throw IncompatibleTowers();
}

bool is_ancestor(const LevelPtr& anc, const LevelPtr& lvl) {
  if (!anc) return true;
  if (!lvl || lvl->depth < anc->depth) return false;
  LevelPtr s;
  return same_level(ancestor_at(lvl, anc->depth, s), anc);
}

// ---- TowerElem ----

TowerElem TowerElem::make(const LevelPtr& lvl, std::vector<TowerElem> c) {
  bool upper_zero = true;
  for (size_t k = 1; k < c.size(); ++k)
    if (!c[k].is_zero()) { upper_zero = false; break; }
  if (upper_zero) return std::move(c[0]);
  TowerElem e;
  e.lvl_ = lvl;
  e.c_ = std::move(c);
  return e;
}

TowerElem TowerElem::generator(const LevelPtr& lvl) {
  std::vector<TowerElem> c(lvl->degree());
  c[1] = 1;
  return make(lvl, std::move(c));
}

TowerElem TowerElem::from_coords(const LevelPtr& lvl, std::vector<TowerElem> coords) {
  if (!lvl) return coords.empty() ? TowerElem() : coords[0];
  coords.resize(lvl->degree());
  for (auto& c : coords)
    if (!is_ancestor(c.level(), lvl->parent)) throw IncompatibleTowers();
  return make(lvl, std::move(coords));
}

int TowerElem::depth() const { return lvl_ ? lvl_->depth : 0; }

std::vector<TowerElem> TowerElem::coords_at(const LevelPtr& lvl) const {
  if (same_level(lvl_, lvl)) return c_;
  if (!is_ancestor(lvl_, lvl)) throw IncompatibleTowers();
  std::vector<TowerElem> c(lvl->degree());
  c[0] = *this;
  return c;
}

TowerElem TowerElem::operator-() const {
  if (!lvl_) return TowerElem(-re_, -im_);
  std::vector<TowerElem> c = c_;
  for (auto& x : c) x = -x;
  return make(lvl_, std::move(c));
}

TowerElem TowerElem::inv() const { return TowerOps::inv(*this); }

TowerElem TowerElem::conj_base() const {
  if (lvl_) throw FieldError("conjugation is defined on Q(i) only");
  return TowerElem(re_, -im_);
}

TowerElem TowerElem::pow(unsigned n) const {
  TowerElem r = 1, b = *this;
  while (n) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

TowerElem operator+(const TowerElem& a, const TowerElem& b) { return TowerOps::add(a, b, 1); }
TowerElem operator-(const TowerElem& a, const TowerElem& b) { return TowerOps::add(a, b, -1); }
TowerElem operator*(const TowerElem& a, const TowerElem& b) { return TowerOps::mul(a, b); }
TowerElem operator/(const TowerElem& a, const TowerElem& b) { return TowerOps::mul(a, b.inv()); }

bool operator==(const TowerElem& a, const TowerElem& b) {
  if (!a.lvl_ || !b.lvl_) {
    if (a.lvl_ || b.lvl_) return false;
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  if (!same_level(a.lvl_, b.lvl_)) return false;
  for (size_t k = 0; k < a.c_.size(); ++k)
    if (a.c_[k] != b.c_[k]) return false;
  return true;
}

int TowerElem::compare(const TowerElem& a, const TowerElem& b) {
  if (a.depth() != b.depth()) return a.depth() < b.depth() ? -1 : 1;
  if (!a.lvl_) {
    int c = cmp(a.re_, b.re_);
    if (c) return c < 0 ? -1 : 1;
    c = cmp(a.im_, b.im_);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  for (size_t k = a.c_.size(); k-- > 0;) {
    int c = compare(a.c_[k], b.c_[k]);
    if (c) return c;
  }
  return 0;
}

namespace {
std::string gaussian_str(const Rational& re, const Rational& im) {
  if (sgn(im) == 0) return re.get_str();
  std::string ims;
  if (im == 1) ims = "i";
  else if (im == -1) ims = "-i";
  else ims = im.get_str() + "*i";
  if (sgn(re) == 0) return ims;
  std::string s = re.get_str();
  if (ims[0] != '-') s += "+";
  return s + ims;
}
bool needs_parens(const std::string& s) {
  return s.find_first_of("+-", 1) != std::string::npos;
}
}  // namespace

std::string TowerElem::str() const { return to_literal(*this); }

std::string to_literal(const TowerElem& e) {
  if (e.is_base()) return gaussian_str(e.re(), e.im());
  const LevelPtr& L = e.level();
  std::string gen = L->kind == Level::Quadratic ? "sqrt(" + to_literal(L->radicand) + ")" : "theta";
  std::string out;
  const auto& c = e.coords();
  for (size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    std::string cs = to_literal(c[k]);
    std::string term;
    std::string g = k == 0 ? "" : (k == 1 ? gen : gen + "^" + std::to_string(k));
    if (k == 0) term = cs;
    else if (cs == "1") term = g;
    else if (cs == "-1") term = "-" + g;
    else term = (needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + g;
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out;
}

// ---- context ----

std::vector<LevelPtr> TowerCtx::levels() const {
  std::vector<LevelPtr> v;
  for (LevelPtr l = top_; l; l = l->parent) v.insert(v.begin(), l);
  return v;
}

bool TowerCtx::has_cubic() const {
  for (LevelPtr l = top_; l; l = l->parent)
    if (l->kind == Level::Cubic) return true;
  return false;
}

TowerCtx TowerCtx::absorb(const TowerElem& e) const {
  return TowerCtx(join_levels(top_, e.level()), max_depth_);
}

TowerCtx TowerCtx::adjoin_sqrt(const TowerElem& radicand) const {
  LevelPtr top = join_levels(top_, radicand.level());
  int d = top ? top->depth : 0;
  if (d + 1 > max_depth_) throw TowerDepthExceeded(max_depth_);
  auto lvl = std::make_shared<Level>();
  lvl->kind = Level::Quadratic;
  lvl->parent = top;
  lvl->depth = d + 1;
  lvl->radicand = radicand;
  return TowerCtx(lvl, max_depth_);
}

TowerCtx TowerCtx::adjoin_cubic(const std::vector<TowerElem>& min) const {
  if (top_) throw CubicNotAllowed("a cubic level must sit directly over Q(i)");
  if (max_depth_ < 1) throw TowerDepthExceeded(max_depth_);
  if (min.size() != 3) throw FieldError("cubic level needs three lower coefficients");
  for (auto& c : min)
    if (!c.is_base()) throw CubicNotAllowed("coefficients must lie in Q(i)");
  std::vector<TowerElem> poly = min;
  poly.push_back(1);
  if (!gaussian_roots(poly).empty()) throw CubicNotAllowed("polynomial has a root in Q(i)");
  auto lvl = std::make_shared<Level>();
  lvl->kind = Level::Cubic;
  lvl->depth = 1;
  lvl->min = min;
  return TowerCtx(lvl, max_depth_);
}

std::optional<TowerElem> SqrtHints::lookup(const TowerElem& radicand) const {
  for (auto& [r, s] : known) {
    try {
      if (r == radicand) return s;
    } catch (const IncompatibleTowers&) {
    }
  }
  return std::nullopt;
}

// ---- square roots ----

std::optional<TowerElem> gaussian_sqrt(const TowerElem& e) {
  if (!e.is_base()) return std::nullopt;
  const Rational& a = e.re();
  const Rational& b = e.im();
  Rational r;
  if (sgn(b) == 0) {
    if (sgn(a) >= 0) {
      if (rational_sqrt(a, r)) return TowerElem(r);
    } else if (rational_sqrt(-a, r)) {
      return TowerElem(0, r);
    }
    return std::nullopt;
  }
  Rational n;
  if (!rational_sqrt(a * a + b * b, n)) return std::nullopt;
  Rational x;
  if (!rational_sqrt((a + n) / 2, x)) return std::nullopt;
  return TowerElem(x, b / (2 * x));
}

namespace {

std::optional<TowerElem> sqrt_below(const TowerElem& e, const LevelPtr& L) {
  if (e.is_zero()) return TowerElem();
  if (!L) return gaussian_sqrt(e);
  if (!is_ancestor(e.level(), L)) return std::nullopt;
  if (L->kind == Level::Cubic) {
    // odd degree: a Q(i) element is a square here iff it is one in Q(i)
    if (e.is_base()) return gaussian_sqrt(e);
    return std::nullopt;
  }
  auto c = e.coords_at(L);
  const TowerElem& a = c[0];
  const TowerElem& b = c[1];
  const TowerElem& r = L->radicand;
  if (b.is_zero()) {
    if (auto s = sqrt_below(a, L->parent)) return s;
    if (auto s = sqrt_below(a / r, L->parent)) return *s * TowerElem::generator(L);
    return std::nullopt;
  }
  auto n = sqrt_below(a * a - b * b * r, L->parent);
  if (!n) return std::nullopt;
  for (int sign : {1, -1}) {
    TowerElem c2 = sign > 0 ? (a + *n) / 2 : (a - *n) / 2;
    if (c2.is_zero()) continue;
    auto cc = sqrt_below(c2, L->parent);
    if (!cc) continue;
    TowerElem d = b / (*cc * 2);
    return TowerElem::from_coords(L, {*cc, d});
  }
  return std::nullopt;
}

// e = cofactor^2 * radicand with a simpler radicand, for base elements
TowerElem normalize_radicand(const TowerElem& e, TowerElem& cofactor) {
  cofactor = 1;
  if (!e.is_base()) return e;
  if (sgn(e.im()) == 0) {
    Rational cof;
    Rational sf = squarefree_part(e.re(), &cof);
    cofactor = TowerElem(cof);
    return TowerElem(sf);
  }
  if (sgn(e.re()) == 0) {
    // b*i = (b/2) (1+i)^2
    Rational cof;
    Rational sf = squarefree_part(e.im() / 2, &cof);
    cofactor = TowerElem(cof) * TowerElem(1, 1);
    return TowerElem(sf);
  }
  // pull the square part of the content out of a Gaussian rational
  Integer den = lcm(e.re().get_den(), e.im().get_den());
  Integer A = e.re().get_num() * (den / e.re().get_den()) * den;
  Integer B = e.im().get_num() * (den / e.im().get_den()) * den;
  Integer g = gcd(A, B);
  Rational gcof;
  Rational gsf = squarefree_part(Rational(g), &gcof);
  cofactor = TowerElem(gcof / den);
  return TowerElem(Rational(A) / (gcof * gcof), Rational(B) / (gcof * gcof));
}

}  // namespace

std::optional<TowerElem> find_sqrt(const TowerElem& e, const TowerCtx& ctx) {
  LevelPtr L = join_levels(ctx.top(), e.level());
  return sqrt_below(e, L);
}

Extended sqrt(const TowerElem& e, const TowerCtx& ctx, const SqrtHints* hints) {
  TowerCtx c = ctx.absorb(e);
  if (auto r = find_sqrt(e, c)) return {*r, c};
  TowerElem cof;
  TowerElem rad = normalize_radicand(e, cof);
  if (hints) {
    if (auto r = hints->lookup(rad)) return {cof * *r, c};
  }
  if (!(rad == e)) {
    if (auto r = find_sqrt(rad, c)) return {cof * *r, c};
  }
  TowerCtx next = c.adjoin_sqrt(rad);
  return {cof * TowerElem::generator(next.top()), next};
}

Rational squarefree_part(const Rational& q, Rational* cofactor) {
  if (sgn(q) == 0) {
    if (cofactor) *cofactor = 1;
    return 0;
  }
  Integer n = q.get_num() * q.get_den();
  Integer d = q.get_den();
  int s = sgn(n);
  n = abs(n);
  Integer sq = 1, rest = 1;
  for (unsigned long p = 2; p < 20000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++e;
    }
    for (unsigned k = 0; k + 1 < e; k += 2) sq *= p;
    if (e & 1) rest *= p;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    sq *= r;
  } else {
    rest *= n;
  }
  if (cofactor) {
    *cofactor = Rational(sq, d);
    cofactor->canonicalize();
  }
  return Rational(s * rest);
}

// ---- cube roots and Gaussian roots ----

namespace {

using cld = std::complex<long double>;

cld to_cld(const TowerElem& e) { return {(long double)e.re().get_d(), (long double)e.im().get_d()}; }

Integer round_ld(long double v) {
  Integer r;
  long double f = std::floor(v + 0.5L);
  if (std::fabs(f) < 9e18L) {
    r = (long)f;
  } else {
    mpz_set_d(r.get_mpz_t(), (double)f);
  }
  return r;
}

TowerElem eval_poly(const std::vector<TowerElem>& c, const TowerElem& x) {
  TowerElem acc;
  for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

// Aberth iteration for all complex roots
std::vector<cld> numeric_roots(const std::vector<cld>& c) {
  int n = (int)c.size() - 1;
  std::vector<cld> z(n);
  long double rad = 0;
  for (int k = 0; k < n; ++k) rad = std::max(rad, std::pow(std::abs(c[k] / c[n]), 1.0L / (n - k)));
  rad = 2 * rad + 1;
  for (int k = 0; k < n; ++k) z[k] = std::polar(rad, (long double)(2 * M_PI * k / n + 0.4));
  for (int it = 0; it < 500; ++it) {
    long double moved = 0;
    for (int k = 0; k < n; ++k) {
      cld p = 0, dp = 0;
      for (int j = n; j >= 0; --j) {
        dp = dp * z[k] + p;
        p = p * z[k] + c[j];
      }
      if (std::abs(p) == 0) continue;
      cld ratio = p / dp;
      cld s = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      cld w = ratio / (1.0L - ratio * s);
      z[k] -= w;
      moved = std::max(moved, std::abs(w) / (1 + std::abs(z[k])));
    }
    if (moved < 1e-17L) break;
  }
  return z;
}

}  // namespace

std::vector<TowerElem> gaussian_roots(const std::vector<TowerElem>& coeffs) {
  std::vector<TowerElem> c = coeffs;
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  std::vector<TowerElem> roots;
  if (c.size() <= 1) return roots;
  for (auto& x : c)
    if (!x.is_base()) throw FieldError("gaussian_roots needs Q(i) coefficients");
  // strip zero roots
  size_t lo = 0;
  while (c[lo].is_zero()) ++lo;
  if (lo) roots.push_back(TowerElem());
  c.erase(c.begin(), c.begin() + lo);
  if (c.size() <= 1) return roots;
  // scale to Gaussian integer coefficients; an integral root bound is then a_n * root
  Integer den = 1;
  for (auto& x : c) den = lcm(den, lcm(x.re().get_den(), x.im().get_den()));
  for (auto& x : c) x *= TowerElem(Rational(den));
  TowerElem lead = c.back();
  std::vector<cld> nc;
  for (auto& x : c) nc.push_back(to_cld(x));
  auto approx = numeric_roots(nc);
  for (auto& z : approx) {
    cld w = z * to_cld(lead);
    TowerElem cand = TowerElem(Rational(round_ld(w.real())), Rational(round_ld(w.imag()))) / lead;
    if (!eval_poly(c, cand).is_zero()) continue;
    bool dup = false;
    for (auto& r : roots) dup = dup || r == cand;
    if (!dup) roots.push_back(cand);
  }
  return roots;
}

std::optional<TowerElem> gaussian_cbrt(const TowerElem& e) {
  if (!e.is_base()) return std::nullopt;
  if (e.is_zero()) return TowerElem();
  auto exact_int_cbrt = [](const Rational& q, Rational& out) {
    Integer n = q.get_num(), d = q.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), 3)) return false;
    if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), 3)) return false;
    out = Rational(rn, rd);
    out.canonicalize();
    return true;
  };
  Rational r;
  if (sgn(e.im()) == 0) {
    if (exact_int_cbrt(e.re(), r)) return TowerElem(r);
    return std::nullopt;
  }
  if (sgn(e.re()) == 0) {
    // (-i c)^3 = i c^3
    if (exact_int_cbrt(e.im(), r)) return TowerElem(0, -r);
    return std::nullopt;
  }
  for (auto& root : gaussian_roots({-e, 0, 0, 1})) return root;
  return std::nullopt;
}

Extended cbrt(const TowerElem& e, const TowerCtx& ctx, bool allow_cubic) {
  if (auto r = gaussian_cbrt(e)) return {*r, ctx.absorb(e)};
  if (!e.is_base()) throw CubicNotAllowed("cube root of an element outside Q(i)");
  if (!allow_cubic) throw CubicNotAllowed("policy forbids cubic extensions");
  TowerCtx c = ctx.adjoin_cubic({-e, 0, 0});
  return {TowerElem::generator(c.top()), c};
}

}  // namespace qmap
