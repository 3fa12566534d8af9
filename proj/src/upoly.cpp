#include "qmap/poly.hpp"

namespace qmap {

void UPoly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

UPoly UPoly::monic() const {
  if (c.empty()) return *this;
  TowerElem li = lead().inv();
  UPoly r = *this;
  for (auto& x : r.c) x *= li;
  return r;
}

UPoly UPoly::derivative() const {
  std::vector<TowerElem> d;
  for (size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * TowerElem(long(k)));
  return UPoly(std::move(d));
}

TowerElem UPoly::eval(const TowerElem& x) const {
  TowerElem acc;
  for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<TowerElem> r(std::max(a.c.size(), b.c.size()));
  for (size_t k = 0; k < a.c.size(); ++k) r[k] = a.c[k];
  for (size_t k = 0; k < b.c.size(); ++k) r[k] += b.c[k];
  return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<TowerElem> r(std::max(a.c.size(), b.c.size()));
  for (size_t k = 0; k < a.c.size(); ++k) r[k] = a.c[k];
  for (size_t k = 0; k < b.c.size(); ++k) r[k] -= b.c[k];
  return UPoly(std::move(r));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<TowerElem> r(a.c.size() + b.c.size() - 1);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  }
  return UPoly(std::move(r));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<TowerElem> r = a.c;
  std::vector<TowerElem> q(a.c.size() - b.c.size() + 1);
  TowerElem li = b.lead().inv();
  for (int k = (int)q.size() - 1; k >= 0; --k) {
    TowerElem t = r[k + b.degree()] * li;
    q[k] = t;
    if (t.is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r[k + j] -= t * b.c[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<UPoly> squarefree_decomposition(const UPoly& f) {
  std::vector<UPoly> out;
  if (f.degree() < 1) return out;
  UPoly fm = f.monic();
  UPoly d = fm.derivative();
  UPoly a0 = gcd(fm, d);
  UPoly b = divmod(fm, a0).first;
  UPoly c = divmod(d, a0).first;
  UPoly e = c - b.derivative();
  while (b.degree() > 0) {
    UPoly a = gcd(b, e);
    out.push_back(a);
    b = divmod(b, a).first;
    c = divmod(e, a).first;
    e = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

UPoly squarefree_part(const UPoly& f) {
  if (f.degree() < 1) return f.is_zero() ? f : UPoly({1});
  UPoly fm = f.monic();
  return divmod(fm, gcd(fm, fm.derivative())).first.monic();
}

size_t distinct_root_count(const UPoly& f) { return f.degree() < 1 ? 0 : squarefree_part(f).degree(); }

}  // namespace qmap
