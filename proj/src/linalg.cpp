#include "qmap/linalg.hpp"

#include <stdexcept>

namespace qmap {

Mat3 sym_matrix(const std::array<TowerElem, 10>& c) {
  TowerElem h(Rational(1, 2));
  Mat3 m;
  m[0] = {c[0], c[1] * h, c[2] * h};
  m[1] = {c[1] * h, c[3], c[4] * h};
  m[2] = {c[2] * h, c[4] * h, c[5]};
  return m;
}

std::array<TowerElem, 10> quad_from_sym(const Mat3& m) {
  std::array<TowerElem, 10> c{};
  c[0] = m[0][0];
  c[1] = m[0][1] * 2;
  c[2] = m[0][2] * 2;
  c[3] = m[1][1];
  c[4] = m[1][2] * 2;
  c[5] = m[2][2];
  return c;
}

Mat3 mat_add(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

Mat3 mat_scale(const Mat3& a, const TowerElem& s) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] * s;
  return r;
}

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      TowerElem acc;
      for (int k = 0; k < 3; ++k) acc += a[i][k] * b[k][j];
      r[i][j] = acc;
    }
  return r;
}

Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[j][i];
  return r;
}

Vec3 mat_vec(const Mat3& a, const Vec3& v) {
  Vec3 r;
  for (int i = 0; i < 3; ++i) r[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
  return r;
}

TowerElem dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

TowerElem det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::optional<Mat3> inverse3(const Mat3& m) {
  TowerElem d = det3(m);
  if (d.is_zero()) return std::nullopt;
  TowerElem di = d.inv();
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) * di;
    }
  return r;
}

Matrix to_matrix(const Mat3& m) {
  Matrix r(3, std::vector<TowerElem>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[i][j];
  return r;
}

namespace {
// reduced row echelon form in place; returns pivot columns
std::vector<size_t> rref(Matrix& m) {
  std::vector<size_t> piv;
  if (m.empty()) return piv;
  size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    TowerElem inv = m[r][c].inv();
    for (auto& e : m[r]) e *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      TowerElem f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}
}  // namespace

int rank(Matrix m) { return (int)rref(m).size(); }

std::vector<std::vector<TowerElem>> nullspace(Matrix m) {
  if (m.empty()) return {};
  size_t cols = m[0].size();
  auto piv = rref(m);
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<TowerElem>> out;
  for (size_t fcol = 0; fcol < cols; ++fcol) {
    if (is_piv[fcol]) continue;
    std::vector<TowerElem> v(cols);
    v[fcol] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][fcol];
    out.push_back(v);
  }
  return out;
}

Poly linear_poly(const Vec3& l) {
  return (Poly::var(X).scaled(l[0]) + Poly::var(Y).scaled(l[1]) + Poly::var(Z).scaled(l[2])).with_ring(kXYZ);
}

Vec3 linear_coeffs(const Poly& p) {
  Vec3 r;
  const Var vars[3] = {X, Y, Z};
  for (int i = 0; i < 3; ++i) {
    Exp e{};
    e[vars[i]] = 1;
    r[i] = p.coeff(e);
  }
  return r;
}

bool is_zero_vec(const Vec3& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

std::vector<Vec3> complete_basis(std::vector<Vec3> forms) {
  for (int k = 0; k < 3 && forms.size() < 3; ++k) {
    Vec3 e{};
    e[k] = 1;
    auto trial = forms;
    trial.push_back(e);
    Matrix m;
    for (auto& f : trial) m.push_back({f[0], f[1], f[2]});
    if (rank(m) == (int)trial.size()) forms = trial;
  }
  if (forms.size() != 3) throw std::logic_error("complete_basis: dependent input forms");
  return forms;
}

SourceAut source_from_forms(const Vec3& Xf, const Vec3& Yf, const Vec3& Zf) {
  Mat3 W{Xf, Yf, Zf};
  auto inv = inverse3(W);
  if (!inv) throw std::logic_error("coordinate forms are dependent");
  SourceAut s;
  s.M = *inv;
  return s;
}

}  // namespace qmap
