#include "qmap/poly.hpp"

#include <algorithm>

namespace qmap {

namespace {
const char* const kNames[kNumVars] = {"x", "y", "z", "p", "q", "t", "s", "A", "B", "alpha", "beta", "lambda", "mu"};

int total(const Exp& e) {
  int d = 0;
  for (auto k : e) d += k;
  return d;
}
}  // namespace

const char* var_name(Var v) { return kNames[v]; }

bool var_from_name(const std::string& name, Var& out) {
  for (int k = 0; k < kNumVars; ++k)
    if (name == kNames[k]) {
      out = Var(k);
      return true;
    }
  return false;
}

bool ExpOrder::operator()(const Exp& a, const Exp& b) const {
  int da = total(a), db = total(b);
  if (da != db) return da > db;
  return a > b;
}

Poly::Poly(const TowerElem& c) {
  if (!c.is_zero()) terms_.emplace(Exp{}, c);
}

Poly Poly::var(Var v) {
  Exp e{};
  e[v] = 1;
  Poly p = monomial(1, e);
  p.ring_ = bit(v);
  return p;
}

Poly Poly::monomial(const TowerElem& c, const Exp& e) {
  Poly p;
  if (!c.is_zero()) p.terms_.emplace(e, c);
  for (int k = 0; k < kNumVars; ++k)
    if (e[k]) p.ring_ |= bit(Var(k));
  return p;
}

Poly Poly::with_ring(VarSet r) const {
  Poly p = *this;
  p.ring_ |= r;
  return p;
}

void Poly::add_term(const Exp& e, const TowerElem& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0); }

TowerElem Poly::constant_term() const { return coeff(Exp{}); }

TowerElem Poly::coeff(const Exp& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? TowerElem() : it->second;
}

VarSet Poly::used() const {
  VarSet u = 0;
  for (auto& [e, c] : terms_)
    for (int k = 0; k < kNumVars; ++k)
      if (e[k]) u |= bit(Var(k));
  return u;
}

int Poly::degree(Var v) const {
  int d = terms_.empty() ? -1 : 0;
  for (auto& [e, c] : terms_) d = std::max(d, (int)e[v]);
  return d;
}

int Poly::total_degree() const { return terms_.empty() ? -1 : total(terms_.begin()->first); }

Poly Poly::homogeneous_part(int d) const {
  Poly r;
  r.ring_ = ring_;
  for (auto& [e, c] : terms_)
    if (total(e) == d) r.terms_.emplace(e, c);
  return r;
}

Poly Poly::derivative(Var v) const {
  Poly r;
  r.ring_ = ring_;
  for (auto& [e, c] : terms_) {
    if (!e[v]) continue;
    Exp f = e;
    --f[v];
    r.add_term(f, c * TowerElem(long(e[v])));
  }
  return r;
}

std::vector<Poly> Poly::coeffs_in(Var v) const {
  std::vector<Poly> out(std::max(0, degree(v) + 1));
  for (auto& o : out) o.ring_ = ring_;
  for (auto& [e, c] : terms_) {
    Exp f = e;
    f[v] = 0;
    out[e[v]].add_term(f, c);
  }
  return out;
}

Poly Poly::eval(Var v, const TowerElem& val) const {
  Poly r;
  r.ring_ = ring_;
  for (auto& [e, c] : terms_) {
    Exp f = e;
    f[v] = 0;
    r.add_term(f, c * val.pow(e[v]));
  }
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly r(1), b = *this;
  r.ring_ = ring_;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

Poly Poly::operator-() const {
  Poly r;
  r.ring_ = ring_;
  for (auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, -c);
  return r;
}

Poly Poly::scaled(const TowerElem& k) const {
  Poly r;
  r.ring_ = ring_;
  if (k.is_zero()) return r;
  for (auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * k);
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r = a;
  r.ring_ |= b.ring_;
  for (auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r = a;
  r.ring_ |= b.ring_;
  for (auto& [e, c] : b.terms_) r.add_term(e, -c);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  r.ring_ = a.ring_ | b.ring_;
  for (auto& [ea, ca] : a.terms_)
    for (auto& [eb, cb] : b.terms_) {
      Exp e;
      for (int k = 0; k < kNumVars; ++k) e[k] = uint8_t(ea[k] + eb[k]);
      r.add_term(e, ca * cb);
    }
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second != ib->second) return false;
  return true;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto& [e, c] : terms_) {
    std::string mono;
    for (int k = 0; k < kNumVars; ++k) {
      if (!e[k]) continue;
      if (!mono.empty()) mono += "*";
      mono += kNames[k];
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    std::string cs = to_literal(c);
    bool compound = cs.find_first_of("+-", 1) != std::string::npos || cs.find('/') != std::string::npos ||
                    cs.find('*') != std::string::npos;
    std::string term;
    if (mono.empty()) {
      term = compound && cs.find_first_of("+-", 1) != std::string::npos ? "(" + cs + ")" : cs;
    } else if (cs == "1") {
      term = mono;
    } else if (cs == "-1") {
      term = "-" + mono;
    } else if (compound) {
      term = (cs.find_first_of("+-", 1) != std::string::npos ? "(" + cs + ")" : cs) + "*" + mono;
    } else {
      term = cs + "*" + mono;
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out;
}

Poly substitute(const Poly& f, const std::map<Var, Poly>& assignment) {
  for (auto& [v, img] : assignment)
    if (!(f.ring() & bit(v))) throw RingMismatch(std::string("variable ") + var_name(v) + " is not in the polynomial ring");
  return subst(f, assignment);
}

Poly subst(const Poly& f, const std::map<Var, Poly>& assignment) {
  VarSet ring = f.ring();
  for (auto& [v, img] : assignment) ring &= VarSet(~bit(v));
  for (auto& [v, img] : assignment) ring |= img.ring();
  // powers of each image are cached per variable
  std::map<Var, std::vector<Poly>> powers;
  Poly r;
  r = r.with_ring(ring);
  for (auto& [e, c] : f.terms()) {
    Exp rest = e;
    Poly term(c);
    for (auto& [v, img] : assignment) {
      if (!e[v]) continue;
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(Poly(1));
      while ((int)pw.size() <= e[v]) pw.push_back(pw.back() * img);
      term = term * pw[e[v]];
      rest[v] = 0;
    }
    r += term * Poly::monomial(1, rest);
  }
  return r.with_ring(ring);
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero();
  Poly q, r = a;
  q = q.with_ring(a.ring() | b.ring());
  if (b.is_constant()) return a.scaled(b.constant_term().inv()).with_ring(a.ring() | b.ring());
  const Exp& lb = b.leading_exp();
  TowerElem lci = b.leading_coeff().inv();
  while (!r.is_zero()) {
    const Exp& lr = r.leading_exp();
    Exp d;
    for (int k = 0; k < kNumVars; ++k) {
      if (lr[k] < lb[k]) return std::nullopt;
      d[k] = uint8_t(lr[k] - lb[k]);
    }
    Poly t = Poly::monomial(r.leading_coeff() * lci, d);
    q += t;
    r -= t * b;
  }
  return q;
}

Poly resultant(const Poly& f, const Poly& g, Var v) {
  int m = f.degree(v), n = g.degree(v);
  VarSet ring = VarSet((f.ring() | g.ring()) & ~bit(v));
  if (f.is_zero() || g.is_zero()) return Poly().with_ring(ring);
  if (m == 0 && n == 0) return Poly(1).with_ring(ring);
  auto fc = f.coeffs_in(v);
  auto gc = g.coeffs_in(v);
  int N = m + n;
  std::vector<std::vector<Poly>> M(N, std::vector<Poly>(N));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) M[r][r + k] = fc[m - k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) M[n + r][r + k] = gc[n - k];
  int sign = 1;
  Poly prev(1);
  for (int k = 0; k < N - 1; ++k) {
    if (M[k][k].is_zero()) {
      int sw = -1;
      for (int r = k + 1; r < N; ++r)
        if (!M[r][k].is_zero()) {
          sw = r;
          break;
        }
      if (sw < 0) return Poly().with_ring(ring);
      std::swap(M[k], M[sw]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        Poly num = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        auto q = divide_exact(num, prev);
        if (!q) throw std::logic_error("Bareiss step is not exact");
        M[i][j] = *q;
      }
      M[i][k] = Poly();
    }
    prev = M[k][k];
  }
  Poly det = M[N - 1][N - 1];
  if (sign < 0) det = -det;
  return det.with_ring(ring);
}

namespace {
void require_univariate(const Poly& f, Var v) {
  if (f.used() & ~bit(v)) throw NotUnivariate(std::string("polynomial is not univariate in ") + var_name(v));
}
}  // namespace

UPoly UPoly::from(const Poly& f, Var v) {
  require_univariate(f, v);
  std::vector<TowerElem> c(std::max(0, f.degree(v) + 1));
  for (auto& [e, k] : f.terms()) c[e[v]] = k;
  return UPoly(std::move(c));
}

Poly UPoly::to_poly(Var v) const {
  Poly r;
  for (size_t k = 0; k < c.size(); ++k) {
    Exp e{};
    e[v] = uint8_t(k);
    r += Poly::monomial(c[k], e);
  }
  return r.with_ring(bit(v));
}

Poly gcd_univar(const Poly& f, const Poly& g, Var v) {
  return gcd(UPoly::from(f, v), UPoly::from(g, v)).to_poly(v);
}

std::vector<std::pair<int, int>> squarefree_profile(const Poly& f, Var v) {
  UPoly u = UPoly::from(f, v);
  if (u.is_zero()) throw std::invalid_argument("squarefree profile of the zero polynomial");
  std::vector<std::pair<int, int>> out;
  auto parts = squarefree_decomposition(u);
  for (size_t m = 0; m < parts.size(); ++m)
    if (parts[m].degree() > 0) out.emplace_back(int(m + 1), parts[m].degree());
  return out;
}

RootList roots_in_tower(const Poly& f, Var v, const TowerCtx& ctx) {
  UPoly u = UPoly::from(f, v);
  if (u.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  RootList out{{}, ctx};
  for (auto& c : u.c) out.ctx = out.ctx.absorb(c);
  auto parts = squarefree_decomposition(u);
  for (size_t m = 0; m < parts.size(); ++m) {
    UPoly p = parts[m];
    int mult = int(m + 1);
    if (p.degree() > 2) {
      // split off Q(i) roots when the factor has Q(i) coefficients
      bool base = std::all_of(p.c.begin(), p.c.end(), [](const TowerElem& e) { return e.is_base(); });
      if (base) {
        for (auto& r : gaussian_roots(p.c)) {
          out.roots.emplace_back(r, mult);
          p = divmod(p, UPoly({-r, 1})).first;
        }
      }
      if (p.degree() > 2) throw DegreeUnsupported("root extraction needs degree at most 2, got " + std::to_string(p.degree()));
    }
    if (p.degree() == 1) {
      out.roots.emplace_back(-p.c[0] / p.c[1], mult);
    } else if (p.degree() == 2) {
      const TowerElem& a = p.c[2];
      const TowerElem& b = p.c[1];
      const TowerElem& c = p.c[0];
      auto sq = sqrt(b * b - a * c * 4, out.ctx);
      out.ctx = sq.ctx;
      TowerElem den = (a * 2).inv();
      out.roots.emplace_back((-b + sq.value) * den, mult);
      out.roots.emplace_back((-b - sq.value) * den, mult);
    }
  }
  return out;
}

}  // namespace qmap
