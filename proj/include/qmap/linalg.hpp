#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qmap/maps.hpp"

namespace qmap {

using Vec3 = std::array<TowerElem, 3>;
using Mat3 = std::array<Vec3, 3>;
using Matrix = std::vector<std::vector<TowerElem>>;

// Symmetric matrix of the quadratic part (off-diagonal entries are half the mixed coefficients).
Mat3 sym_matrix(const std::array<TowerElem, 10>& c);
std::array<TowerElem, 10> quad_from_sym(const Mat3& m);
Mat3 mat_add(const Mat3& a, const Mat3& b);
Mat3 mat_scale(const Mat3& a, const TowerElem& s);
Mat3 mat_mul(const Mat3& a, const Mat3& b);
Mat3 transpose(const Mat3& a);
Vec3 mat_vec(const Mat3& a, const Vec3& v);
TowerElem dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
TowerElem det3(const Mat3& m);
std::optional<Mat3> inverse3(const Mat3& m);

Matrix to_matrix(const Mat3& m);
int rank(Matrix m);
std::vector<std::vector<TowerElem>> nullspace(Matrix m);  // basis of {v : m v = 0}

// Linear forms in x, y, z as coefficient vectors.
Poly linear_poly(const Vec3& l);
// coefficient vector of the degree-one part of p
Vec3 linear_coeffs(const Poly& p);
bool is_zero_vec(const Vec3& v);
// Completes independent forms to a basis by appending unit forms.
std::vector<Vec3> complete_basis(std::vector<Vec3> forms);
// Source change whose new coordinates are the given forms in the old variables.
SourceAut source_from_forms(const Vec3& X, const Vec3& Y, const Vec3& Z);

}  // namespace qmap
